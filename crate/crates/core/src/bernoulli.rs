//! Bernoulli numbers: an exact table for small indices, and residues modulo
//! prime powers for large indices recovered from power sums.
//!
//! With `B_1 = -1/2`, Faulhaber's formula gives
//!
//! ```text
//! S(m) = Σ_{k=1}^{p-1} k^m = Σ_{i=0}^{m} C(m,i)/(i+1) · p^(i+1) · B_(m-i)
//! ```
//!
//! so `p·B_m = S(m) - Σ_{i≥1} C(m,i)/(i+1) · p^i · (p·B_(m-i))`. Every `p·B_j`
//! is p-integral (von Staudt–Clausen), so the recursion runs on `p·B_j` and
//! only keeps the correction terms whose p-power weight `i - v_p(i+1)` lies
//! below the requested precision.

use std::collections::HashMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{binomial, is_prime, max_digits, ModContext, PadicNumber, Rational};
use crate::harmonic::power_sum_residue;
use crate::{Error, Result};

/// Default cap on the exact table.
pub const DEFAULT_CAP: u64 = 64;

/// Exact `B_0..=B_cap` from `Σ_{j=0}^{n} C(n+1,j) B_j = 0`.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    values: Vec<Rational>,
}

impl BernoulliTable {
    pub fn new(cap: u64) -> Self {
        let mut values: Vec<Rational> = Vec::with_capacity(cap as usize + 1);
        values.push(Rational::one());
        for n in 1..=cap as i64 {
            let mut acc = Rational::zero();
            for (j, b) in values.iter().enumerate() {
                if !b.is_zero() {
                    acc += Rational::from_integer(binomial(n + 1, j as i64).unwrap()) * b;
                }
            }
            values.push(-acc / Rational::from_integer(BigInt::from(n + 1)));
        }
        BernoulliTable { values }
    }

    pub fn cap(&self) -> u64 {
        self.values.len() as u64 - 1
    }

    pub fn get(&self, n: u64) -> Result<&Rational> {
        self.values
            .get(n as usize)
            .ok_or(Error::BernoulliCap { n, cap: self.cap() })
    }
}

fn shared_table() -> &'static BernoulliTable {
    static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
    TABLE.get_or_init(|| BernoulliTable::new(DEFAULT_CAP))
}

/// Exact `B_n` for `n ≤ 64`.
pub fn bernoulli_exact(n: u64) -> Result<Rational> {
    shared_table().get(n).cloned()
}

/// Product of the primes `q` with `(q-1) | n`, the denominator of `B_n`.
pub fn von_staudt_denominator(n: u64) -> Result<u64> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::OddIndex(n));
    }
    let mut d = 1u64;
    for div in 1..=n {
        if n.is_multiple_of(div) && is_prime(div + 1) {
            d *= div + 1;
        }
    }
    Ok(d)
}

fn v_p(mut n: u64, p: u64) -> i64 {
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

struct PowerSumRecursion {
    p: u64,
    memo: HashMap<(u64, u32), PadicNumber>,
}

impl PowerSumRecursion {
    /// `p·B_m` modulo `p^digits`.
    fn p_bernoulli(&mut self, m: u64, digits: u32) -> Result<PadicNumber> {
        let p = self.p;
        if digits > max_digits(p) {
            return Err(Error::CapacityExceeded { p, digits });
        }
        match m {
            0 => return Ok(PadicNumber::from_i128(p, p as i128, digits)),
            1 => {
                let half = PadicNumber::exact_int(p, 2).inv()?;
                return Ok((PadicNumber::exact_int(p, -(p as i128)) * half).truncate(digits as i64));
            }
            _ if m % 2 == 1 => return Ok(PadicNumber::zero(p)),
            _ => {}
        }
        if let Some(v) = self.memo.get(&(m, digits)) {
            return Ok(*v);
        }
        let modulus = (p as u128).pow(digits);
        let mut acc = PadicNumber::from_residue(p, power_sum_residue(p, m, modulus), digits);
        let last = m.min(2 * digits as u64 + 4);
        for i in 1..=last {
            let idx = m - i;
            if idx > 1 && idx % 2 == 1 {
                continue;
            }
            let weight = i as i64 - v_p(i + 1, p);
            if weight >= digits as i64 {
                continue;
            }
            let inner = self.p_bernoulli(idx, digits - weight as u32)?;
            if inner.is_zero() && !inner.is_cancelled() {
                continue;
            }
            let coef = Rational::new(binomial(m as i64, i as i64)?, BigInt::from(i + 1));
            let coef = PadicNumber::from_rational(p, &coef, digits + 1);
            acc = acc - (coef * inner).shift(i as i64);
        }
        let acc = acc.truncate(digits as i64);
        self.memo.insert((m, digits), acc);
        Ok(acc)
    }
}

/// `B_m` as a p-adic number known modulo `p^digits` (absolute precision).
/// Works for every index; `B_m` has valuation `-1` when `(p-1) | m`.
pub fn bernoulli_padic(m: u64, p: u64, digits: u32) -> Result<PadicNumber> {
    let mut rec = PowerSumRecursion {
        p,
        memo: HashMap::new(),
    };
    let pb = rec.p_bernoulli(m, digits + 1)?;
    Ok(pb.shift(-1))
}

/// A validated request for `B_m mod p^K_b` on the fast path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BernoulliQuery {
    pub index: u64,
    pub p: u64,
    pub precision: u32,
}

impl BernoulliQuery {
    pub fn new(m: u64, ctx: &ModContext, k_b: u32) -> Result<Self> {
        let p = ctx.p();
        if m % 2 == 1 {
            return Err(Error::OddIndex(m));
        }
        if m.is_multiple_of(p - 1) {
            return Err(Error::IrregularIndex { m, p });
        }
        if k_b == 0 || k_b > ctx.k() {
            return Err(Error::OutOfRange(format!(
                "Bernoulli precision {k_b} must lie in 1..={}",
                ctx.k()
            )));
        }
        Ok(BernoulliQuery {
            index: m,
            p,
            precision: k_b,
        })
    }

    pub fn residue(&self) -> Result<u128> {
        let b = bernoulli_padic(self.index, self.p, self.precision)?;
        integral_residue(&b, self.precision)
    }
}

/// Residue in `[0, p^t)` of a p-integral value known modulo `p^t`.
fn integral_residue(x: &PadicNumber, t: u32) -> Result<u128> {
    let (v, u) = x.residue_at(t as i64)?;
    if v < 0 {
        return Err(Error::OutOfRange(format!("value {x} is not p-integral")));
    }
    if v >= t as i64 {
        return Ok(0);
    }
    Ok(u * (x.prime() as u128).pow(v as u32))
}

/// `B_m mod p^K_b` for even `m` with `(p-1) ∤ m`.
pub fn bernoulli_mod(m: u64, ctx: &ModContext, k_b: u32) -> Result<u128> {
    BernoulliQuery::new(m, ctx, k_b)?.residue()
}

/// `B_m / d mod p^K_b`.
pub fn bernoulli_quotient_mod(m: u64, d: i64, ctx: &ModContext, k_b: u32) -> Result<PadicNumber> {
    let p = ctx.p();
    if (d as i128).rem_euclid(p as i128) == 0 {
        return Err(Error::NotInvertible(d.to_string()));
    }
    let b = PadicNumber::from_residue(p, bernoulli_mod(m, ctx, k_b)?, k_b);
    Ok(b * PadicNumber::exact_int(p, d as i128).inv()?)
}

/// Kummer's congruence `B_m1/m1 ≡ B_m2/m2 (mod p)` for even
/// `m1 ≡ m2 (mod p-1)` not divisible by `p-1`.
pub fn kummer_check(m1: u64, m2: u64, ctx: &ModContext) -> Result<bool> {
    let p = ctx.p();
    for m in [m1, m2] {
        if m % 2 == 1 {
            return Err(Error::OddIndex(m));
        }
        if m % (p - 1) == 0 {
            return Err(Error::IrregularIndex { m, p });
        }
    }
    if (m1 % (p - 1)) != (m2 % (p - 1)) {
        return Err(Error::OutOfRange(format!(
            "{m1} and {m2} are not congruent modulo {}",
            p - 1
        )));
    }
    let quotient = |m: u64| -> Result<PadicNumber> {
        let digits = 1 + v_p(m, p) as u32;
        let b = bernoulli_padic(m, p, digits)?;
        Ok(b * PadicNumber::exact_int(p, m as i128).inv()?)
    };
    quotient(m1)?.congruent(&quotient(m2)?, 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{ratio, reduce_mod};

    #[test]
    fn exact_examples() {
        assert_eq!(bernoulli_exact(4).unwrap(), ratio(-1, 30));
        assert_eq!(bernoulli_exact(3).unwrap(), ratio(0, 1));
        assert_eq!(bernoulli_exact(12).unwrap(), ratio(-691, 2730));
        assert_eq!(bernoulli_exact(1).unwrap(), ratio(-1, 2));
        assert!(matches!(
            bernoulli_exact(65),
            Err(Error::BernoulliCap { n: 65, cap: 64 })
        ));
        assert_eq!(
            BernoulliTable::new(80).get(80).unwrap().denom(),
            &BigInt::from(ratio_den_80())
        );
    }

    fn ratio_den_80() -> u64 {
        von_staudt_denominator(80).unwrap()
    }

    #[test]
    fn von_staudt_examples() {
        assert_eq!(von_staudt_denominator(4).unwrap(), 30);
        assert_eq!(von_staudt_denominator(12).unwrap(), 2730);
        assert_eq!(von_staudt_denominator(2).unwrap(), 6);
        assert!(von_staudt_denominator(5).is_err());
    }

    #[test]
    fn modular_examples() {
        let c7 = ModContext::new(7, 1).unwrap();
        assert_eq!(bernoulli_mod(4, &c7, 1).unwrap(), 3);
        assert_eq!(
            bernoulli_quotient_mod(4, 4, &c7, 1)
                .unwrap()
                .residue_at(1)
                .unwrap(),
            (0, 6)
        );
        let c11 = ModContext::new(11, 2).unwrap();
        let q = bernoulli_quotient_mod(6, 6, &c11, 1).unwrap();
        assert_eq!(
            q,
            reduce_mod(
                &(ratio(1, 42) / ratio(6, 1)),
                &ModContext::new(11, 1).unwrap()
            )
        );
        assert!(matches!(bernoulli_mod(5, &c7, 1), Err(Error::OddIndex(5))));
        assert!(matches!(
            bernoulli_mod(12, &c7, 1),
            Err(Error::IrregularIndex { .. })
        ));
        assert!(matches!(
            bernoulli_quotient_mod(4, 22, &c11, 1),
            Err(Error::NotInvertible(_))
        ));
    }

    #[test]
    fn kummer_examples() {
        let c11 = ModContext::new(11, 1).unwrap();
        assert!(kummer_check(18, 8, &c11).unwrap());
        assert!(kummer_check(8, 8, &c11).unwrap());
        let c7 = ModContext::new(7, 1).unwrap();
        assert!(kummer_check(10, 4, &c7).unwrap());
        assert!(kummer_check(10, 6, &c7).is_err());
    }

    #[test]
    fn irregular_indices_have_negative_valuation() {
        // p B_(p-1) ≡ -1 (mod p)
        for p in [5u64, 7, 11, 13] {
            let b = bernoulli_padic(p - 1, p, 2).unwrap();
            assert_eq!(b.valuation(), Some(-1));
            let exact = bernoulli_exact(p - 1).unwrap();
            assert_eq!(b, PadicNumber::from_rational(p, &exact, 3));
        }
    }
}
