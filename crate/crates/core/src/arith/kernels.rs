use num_bigint::BigInt;
use num_modular::{ModularCoreOps, ModularPow};
use num_traits::{One, Zero};

use super::{ModContext, PadicNumber, Rational};
use crate::{Error, Result};

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = (a as u128).powm(d as u128, &(n as u128)) as u64;
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = (x as u128).mulm(x as u128, &(n as u128)) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes in the inclusive range `[lo, hi]`, ascending.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || lo > hi {
        return Vec::new();
    }
    let n = hi as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            for j in (i * i..=n).step_by(i) {
                sieve[j] = false;
            }
        }
        i += 1;
    }
    (lo.max(2) as usize..=n)
        .filter(|&k| sieve[k])
        .map(|k| k as u64)
        .collect()
}

/// Legendre symbol `(a/p)` by Euler's criterion.
pub fn legendre_symbol(a: i128, p: u64) -> i8 {
    let r = a.rem_euclid(p as i128) as u128;
    if r == 0 {
        return 0;
    }
    let e = r.powm((p as u128 - 1) / 2, &(p as u128));
    if e == 1 {
        1
    } else {
        -1
    }
}

/// Fermat quotient `(a^(p-1) - 1)/p` modulo `p^K`, via `a^(p-1) mod p^(K+1)`.
pub fn fermat_quotient(a: i64, ctx: &ModContext) -> Result<PadicNumber> {
    let p = ctx.p();
    let k = ctx.k();
    if (a as i128).rem_euclid(p as i128) == 0 {
        return Err(Error::NotInvertible(a.to_string()));
    }
    let big = (p as u128)
        .checked_pow(k + 1)
        .filter(|m| *m < 1u128 << 127)
        .ok_or(Error::CapacityExceeded { p, digits: k + 1 })?;
    let base = (a as i128).rem_euclid(big as i128) as u128;
    let power = base.powm((p - 1) as u128, &big);
    let q = power.subm(1, &big) / p as u128;
    Ok(PadicNumber::from_residue(p, q, k))
}

/// `(u_n(x), v_n(x))` modulo `m` by fast doubling on `(u_n, u_{n+1})`:
/// `u_2n = u_n (2 u_{n+1} - x u_n)`, `u_{2n+1} = u_{n+1}^2 - u_n^2`,
/// and finally `v_n = 2 u_{n+1} - x u_n`.
pub fn lucas_uv_mod(n: u64, x: i128, m: u128) -> (u128, u128) {
    if m == 1 {
        return (0, 0);
    }
    let xm = x.rem_euclid(m as i128) as u128;
    let (mut a, mut b) = (0u128, 1u128);
    for bit in (0..64 - n.leading_zeros()).rev() {
        let two_b = b.addm(b, &m);
        let a2 = a.mulm(two_b.subm(xm.mulm(a, &m), &m), &m);
        let b2 = b.mulm(b, &m).subm(a.mulm(a, &m), &m);
        a = a2;
        b = b2;
        if (n >> bit) & 1 == 1 {
            let next = xm.mulm(b, &m).subm(a, &m);
            a = b;
            b = next;
        }
    }
    let v = b.addm(b, &m).subm(xm.mulm(a, &m), &m);
    (a, v)
}

/// Lucas pair reduced modulo the context modulus.
pub fn lucas_uv(n: u64, x: i128, ctx: &ModContext) -> (u128, u128) {
    lucas_uv_mod(n, x, ctx.modulus())
}

/// Exact `(u_n(x), v_n(x))` by the same doubling scheme over big integers.
pub fn lucas_uv_exact(n: u64, x: &BigInt) -> (BigInt, BigInt) {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for bit in (0..64 - n.leading_zeros()).rev() {
        let a2 = &a * (&b * 2 - x * &a);
        let b2 = &b * &b - &a * &a;
        a = a2;
        b = b2;
        if (n >> bit) & 1 == 1 {
            let next = x * &b - &a;
            a = std::mem::replace(&mut b, next);
        }
    }
    let v = &b * 2 - x * &a;
    (a, v)
}

/// Fibonacci/Lucas pair `(F_n, L_n)` modulo the context modulus.
pub fn fib_pair(n: u64, ctx: &ModContext) -> (u128, u128) {
    let m = ctx.modulus();
    let (mut f, mut g) = (0u128, 1u128); // (F_k, F_{k+1})
    for bit in (0..64 - n.leading_zeros()).rev() {
        let f2 = f.mulm(g.addm(g, &m).subm(f, &m), &m);
        let g2 = f.mulm(f, &m).addm(g.mulm(g, &m), &m);
        f = f2;
        g = g2;
        if (n >> bit) & 1 == 1 {
            let next = f.addm(g, &m);
            f = g;
            g = next;
        }
    }
    (f, g.addm(g, &m).subm(f, &m))
}

pub fn fib_pair_exact(n: u64) -> (BigInt, BigInt) {
    let (mut f, mut g) = (BigInt::zero(), BigInt::one());
    for bit in (0..64 - n.leading_zeros()).rev() {
        let f2 = &f * (&g * 2 - &f);
        let g2 = &f * &f + &g * &g;
        f = f2;
        g = g2;
        if (n >> bit) & 1 == 1 {
            let next = &f + &g;
            f = std::mem::replace(&mut g, next);
        }
    }
    let l = &g * 2 - &f;
    (f, l)
}

/// Generalized binomial `n(n-1)...(n-k+1)/k!` for any integer `n`.
pub fn binomial(n: i64, k: i64) -> Result<BigInt> {
    if k < 0 {
        return Err(Error::NegativeIndex(k));
    }
    if (0..k).contains(&n) {
        return Ok(BigInt::zero());
    }
    // symmetric shortcut keeps the loop short for C(n, n-j)
    let k = if n >= 0 && k > n - k { n - k } else { k };
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    Ok(acc)
}

pub fn binomial_exact(n: i64, k: i64) -> Result<Rational> {
    binomial(n, k).map(Rational::from_integer)
}

/// Catalan number `C(2k, k)/(k+1)`.
pub fn catalan_exact(k: i64) -> Result<Rational> {
    Ok(binomial_exact(2 * k, k)? / Rational::from_integer(BigInt::from(k + 1)))
}

/// Exact binomial reduced into the context, valuation extracted.
pub fn binomial_reduced(n: i64, k: i64, ctx: &ModContext) -> Result<PadicNumber> {
    Ok(PadicNumber::from_bigint(ctx.p(), &binomial(n, k)?, ctx.k()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            small,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2,3,5,7
        assert_eq!(primes_in(1990, 2000), vec![1993, 1997, 1999]);
        assert_eq!(primes_in(3, 2).len(), 0);
        assert_eq!(primes_in(1, 2000).len(), 303);
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_symbol(2, 7), 1);
        assert_eq!(legendre_symbol(5, 3), -1);
        assert_eq!(legendre_symbol(7, 7), 0);
        assert_eq!(legendre_symbol(-1, 5), 1);
        assert_eq!(legendre_symbol(-1, 7), -1);
    }

    #[test]
    fn fermat_quotient_examples() {
        let c5 = ModContext::new(5, 2).unwrap();
        assert_eq!(
            fermat_quotient(2, &c5).unwrap().residue_at(2).unwrap(),
            (0, 3)
        );
        let c7 = ModContext::new(7, 2).unwrap();
        // q_7(2) = 9 = 7 + 2
        assert_eq!(
            fermat_quotient(2, &c7).unwrap().residue_at(2).unwrap(),
            (0, 9)
        );
        assert!(fermat_quotient(1, &c7).unwrap().is_zero());
        assert!(fermat_quotient(14, &c7).is_err());
    }

    #[test]
    fn lucas_examples() {
        let (u, v) = lucas_uv_exact(5, &BigInt::from(1));
        assert_eq!((u, v), (BigInt::from(-1), BigInt::from(1)));
        let (u, v) = lucas_uv_exact(7, &BigInt::from(3));
        assert_eq!((u, v), (BigInt::from(377), BigInt::from(843)));
        for p in [3u64, 5, 7, 11, 13] {
            let (u, v) = lucas_uv_exact(p, &BigInt::zero());
            let sign = if (p - 1) / 2 % 2 == 0 { 1 } else { -1 };
            assert_eq!(u, BigInt::from(sign));
            assert!(v.is_zero());
        }
        let ctx = ModContext::new(7, 3).unwrap();
        assert_eq!(lucas_uv(7, 3, &ctx), (377 % 343, 843 % 343));
        assert_eq!(lucas_uv(0, 5, &ctx), (0, 2));
    }

    #[test]
    fn fibonacci_examples() {
        assert_eq!(fib_pair_exact(7), (BigInt::from(13), BigInt::from(29)));
        assert_eq!(fib_pair_exact(0), (BigInt::from(0), BigInt::from(2)));
        let ctx = ModContext::new(7, 1).unwrap();
        let (f, l) = fib_pair(7, &ctx);
        assert_eq!((f, l), (6, 1));
        assert_eq!(legendre_symbol(7, 5), -1);
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial_exact(14, 7).unwrap(), int(3432));
        assert_eq!(binomial_exact(9, 0).unwrap(), int(1));
        assert_eq!(binomial_exact(3, 5).unwrap(), int(0));
        assert_eq!(binomial_exact(-2, 3).unwrap(), int(-4));
        assert_eq!(catalan_exact(3).unwrap(), int(5));
        assert_eq!(binomial(4, -1), Err(Error::NegativeIndex(-1)));

        let ctx = ModContext::new(7, 3).unwrap();
        let c = binomial_reduced(10, 5, &ctx).unwrap();
        assert_eq!((c.valuation(), c.unit()), (Some(1), 36));
        for k in 1..=3 {
            assert_eq!(
                binomial_reduced(2 * k, k, &ctx).unwrap().valuation(),
                Some(0)
            );
        }
        let c5 = ModContext::new(5, 4).unwrap();
        let half = binomial_reduced(10, 5, &c5).unwrap()
            * PadicNumber::from_residue(5, 2, 4).inv().unwrap();
        assert_eq!(half.residue_at(4).unwrap(), (0, 126));
    }
}
