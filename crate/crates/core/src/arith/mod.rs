//! Exact and modular arithmetic.
//!
//! Exact quantities live in [`Rational`] (arbitrary precision). The fast path
//! works with residues modulo `p^K` held in a [`ModContext`] and with
//! [`PadicNumber`]s, which carry a valuation and track how many p-adic digits
//! of their unit are significant.

mod kernels;
mod modctx;
mod padic;

pub use kernels::{
    binomial, binomial_exact, binomial_reduced, catalan_exact, fermat_quotient, fib_pair,
    fib_pair_exact, is_prime, legendre_symbol, lucas_uv, lucas_uv_exact, lucas_uv_mod, primes_in,
};
pub use modctx::{max_digits, mod_inverse_u128, ModContext};
pub use padic::{reduce_mod, PadicNumber};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Exact arbitrary-precision fraction, always in lowest terms.
pub type Rational = num_rational::BigRational;

/// Builds the rational `n / d`; panics on a zero denominator.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Splits `n = p^v * rest` with `p ∤ rest`. `n` must be nonzero.
pub(crate) fn split_p_power(n: &BigInt, p: u64) -> (u64, BigInt) {
    debug_assert!(!n.is_zero());
    let pb = BigInt::from(p);
    let mut v = 0;
    let mut rest = n.clone();
    loop {
        let (q, r) = rest.div_rem(&pb);
        if !r.is_zero() {
            return (v, rest);
        }
        rest = q;
        v += 1;
    }
}

/// p-adic valuation of a rational; `None` for zero.
pub fn valuation(r: &Rational, p: u64) -> Option<i64> {
    if r.is_zero() {
        return None;
    }
    let (vn, _) = split_p_power(r.numer(), p);
    let (vd, _) = split_p_power(r.denom(), p);
    Some(vn as i64 - vd as i64)
}

/// Whether `x ≡ y (mod p^t)` for exact rationals, i.e. `val_p(x - y) ≥ t`.
pub fn rational_congruent(x: &Rational, y: &Rational, p: u64, t: i64) -> bool {
    match valuation(&(x - y), p) {
        None => true,
        Some(v) => v >= t,
    }
}

/// Nonnegative residue of a big integer modulo `m`.
pub(crate) fn bigint_mod_u128(n: &BigInt, m: u128) -> u128 {
    let mb = BigInt::from(m);
    let r = n.mod_floor(&mb);
    debug_assert!(!r.is_negative());
    u128::try_from(r).expect("residue below a u128 modulus")
}
