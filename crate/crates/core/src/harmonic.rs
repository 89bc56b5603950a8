//! Multiple harmonic sums
//! `H(a1,...,ar; n) = Σ_{1 ≤ k1 < ... < kr ≤ n} 1/(k1^a1 ... kr^ar)`.
//!
//! Every r-fold sum is evaluated by the prefix recursion
//! `H(a1..ar; n) = Σ_{k ≤ n} H(a1..a(r-1); k-1) / k^ar`, i.e. in `O(n r)`
//! operations. Direct enumeration of index tuples is kept as an oracle.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_modular::{ModularCoreOps, ModularPow};
use num_traits::{One, Zero};

use crate::arith::{ModContext, PadicNumber, Rational};
use crate::{Error, Result};

/// Ordered tuple `(a1, ..., ar)` of positive exponents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::OutOfRange("empty composition".into()));
        }
        if parts.contains(&0) {
            return Err(Error::OutOfRange(format!(
                "composition parts must be >= 1: {parts:?}"
            )));
        }
        Ok(Composition(parts))
    }

    /// `{1}^j`.
    pub fn ones(j: usize) -> Result<Self> {
        Self::new(vec![1; j])
    }

    pub fn single(a: u32) -> Self {
        Composition(vec![a.max(1)])
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::OutOfRange(format!("bad composition part `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

fn recip_pow(k: u64, a: u32) -> Rational {
    Rational::new(BigInt::one(), BigInt::from(k).pow(a))
}

/// Exact `H(c; n)` via the prefix recursion.
pub fn h_exact(c: &Composition, n: u64) -> Rational {
    let n = n as usize;
    // prev[k] = H(a1..a(i-1); k), starting from the empty sum = 1
    let mut prev = vec![Rational::one(); n + 1];
    for &a in c.parts() {
        let mut cur = vec![Rational::zero(); n + 1];
        for k in 1..=n {
            cur[k] = &cur[k - 1] + &prev[k - 1] * recip_pow(k as u64, a);
        }
        prev = cur;
    }
    prev.swap_remove(n)
}

/// Exact `H(c; n)` by enumerating all increasing index tuples. Exponential
/// in the depth; test oracle only.
pub fn h_exact_brute(c: &Composition, n: u64) -> Rational {
    fn go(parts: &[u32], lo: u64, n: u64) -> Rational {
        match parts.split_first() {
            None => Rational::one(),
            Some((&a, rest)) => {
                let mut acc = Rational::zero();
                for k in lo..=n {
                    acc += recip_pow(k, a) * go(rest, k + 1, n);
                }
                acc
            }
        }
    }
    go(c.parts(), 1, n)
}

/// Memo tables for modular harmonic sums with a fixed upper limit `n`.
///
/// Caches the whole prefix vector `k ↦ H(c; k)` for every composition it has
/// seen, so `H(1,2)` reuses the work done for `H(1)`. The owner supplies the
/// context on every call; [`HarmonicSession`] bundles the two.
#[derive(Debug, Clone)]
pub struct HarmonicCache {
    n: u64,
    inv_pows: HashMap<u32, Vec<u128>>,
    prefixes: HashMap<Vec<u32>, Vec<u128>>,
}

impl HarmonicCache {
    pub fn new(ctx: &ModContext, n: u64) -> Result<Self> {
        if n >= ctx.p() {
            return Err(Error::OutOfRange(format!(
                "modular harmonic sums need n < p (n = {n}, p = {})",
                ctx.p()
            )));
        }
        Ok(HarmonicCache {
            n,
            inv_pows: HashMap::new(),
            prefixes: HashMap::new(),
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    fn inv_pow(&mut self, ctx: &ModContext, a: u32) -> &[u128] {
        let n = self.n as usize;
        self.inv_pows.entry(a).or_insert_with(|| {
            let m = ctx.modulus();
            let mut v = vec![0u128; n + 1];
            for (k, slot) in v.iter_mut().enumerate().skip(1) {
                *slot = ctx.inv(k as u64).powm(a as u128, &m);
            }
            v
        })
    }

    /// Residues of `H(parts; k)` for `k = 0..=n`.
    pub fn prefix(&mut self, ctx: &ModContext, parts: &[u32]) -> &[u128] {
        if !self.prefixes.contains_key(parts) {
            let n = self.n as usize;
            let v = match parts.split_last() {
                None => vec![1u128; n + 1],
                Some((&a, head)) => {
                    let prev = self.prefix(ctx, head).to_vec();
                    let inv = self.inv_pow(ctx, a).to_vec();
                    let m = ctx.modulus();
                    let mut cur = vec![0u128; n + 1];
                    for k in 1..=n {
                        cur[k] = cur[k - 1].addm(prev[k - 1].mulm(inv[k], &m), &m);
                    }
                    cur
                }
            };
            self.prefixes.insert(parts.to_vec(), v);
        }
        &self.prefixes[parts]
    }

    /// `H(c; k)` for `k ≤ n` as a p-adic number with absolute precision `K`.
    pub fn value_at(&mut self, ctx: &ModContext, c: &Composition, k: u64) -> PadicNumber {
        let r = self.prefix(ctx, c.parts())[k as usize];
        PadicNumber::from_residue(ctx.p(), r, ctx.k())
    }
}

/// A [`HarmonicCache`] bound to its context: one evaluation session per
/// `(ctx, n)`.
pub struct HarmonicSession<'a> {
    ctx: &'a ModContext,
    cache: HarmonicCache,
}

impl<'a> HarmonicSession<'a> {
    pub fn new(ctx: &'a ModContext, n: u64) -> Result<Self> {
        Ok(HarmonicSession {
            ctx,
            cache: HarmonicCache::new(ctx, n)?,
        })
    }

    pub fn ctx(&self) -> &'a ModContext {
        self.ctx
    }

    pub fn n(&self) -> u64 {
        self.cache.n
    }

    pub fn prefix(&mut self, parts: &[u32]) -> &[u128] {
        self.cache.prefix(self.ctx, parts)
    }

    pub fn value_at(&mut self, c: &Composition, k: u64) -> PadicNumber {
        self.cache.value_at(self.ctx, c, k)
    }

    /// `H(c; n)`.
    pub fn value(&mut self, c: &Composition) -> PadicNumber {
        let n = self.cache.n;
        self.value_at(c, n)
    }
}

/// `H(c; n)` modulo `p^K`; rejects `n ≥ p`.
pub fn h_mod(c: &Composition, n: u64, ctx: &ModContext) -> Result<PadicNumber> {
    Ok(HarmonicSession::new(ctx, n)?.value(c))
}

/// `Σ_{k=1}^{p-1} k^m` modulo `m_out` (any modulus).
pub fn power_sum_residue(p: u64, m: u64, modulus: u128) -> u128 {
    (1..p).fold(0u128, |acc, k| {
        acc.addm((k as u128).powm(m as u128, &modulus), &modulus)
    })
}

/// `Σ_{k=1}^{p-1} k^m mod p^K`.
pub fn power_sum_mod(m: u64, ctx: &ModContext) -> u128 {
    power_sum_residue(ctx.p(), m, ctx.modulus())
}

fn check_ones_depth(j: usize) -> Result<()> {
    if (1..=4).contains(&j) {
        Ok(())
    } else {
        Err(Error::OutOfRange(format!(
            "h_ones supports j in 1..=4, got {j}"
        )))
    }
}

/// Newton-type expression of `e_j` through power sums `s[i] = H(i; n)`,
/// returned as `(numerator polynomial value, divisor)`.
fn newton<T>(j: usize, s: &[T; 5]) -> (T, i64)
where
    T: Clone
        + std::ops::Add<Output = T>
        + std::ops::Sub<Output = T>
        + std::ops::Mul<Output = T>
        + Scale,
{
    let (p1, p2, p3, p4) = (s[1].clone(), s[2].clone(), s[3].clone(), s[4].clone());
    match j {
        1 => (p1, 1),
        2 => (p1.clone() * p1 - p2, 2),
        3 => (
            p1.clone() * p1.clone() * p1.clone() - (p1 * p2).scale(3) + p3.scale(2),
            6,
        ),
        _ => {
            let p1sq = p1.clone() * p1.clone();
            (
                p1sq.clone() * p1sq.clone() - (p1sq * p2.clone()).scale(6)
                    + (p1 * p3).scale(8)
                    + (p2.clone() * p2).scale(3)
                    - p4.scale(6),
                24,
            )
        }
    }
}

/// Multiplication by a small integer, shared by the exact and modular paths.
trait Scale {
    fn scale(self, c: i64) -> Self;
}

impl Scale for Rational {
    fn scale(self, c: i64) -> Self {
        self * Rational::from_integer(BigInt::from(c))
    }
}

impl Scale for PadicNumber {
    fn scale(self, c: i64) -> Self {
        self * PadicNumber::exact_int(self.prime(), c as i128)
    }
}

/// Exact `H({1}^j; n)` for `j ≤ 4` from the Newton formulas.
pub fn h_ones_exact(j: usize, n: u64) -> Result<Rational> {
    check_ones_depth(j)?;
    let s: [Rational; 5] = std::array::from_fn(|i| {
        if i == 0 {
            Rational::zero()
        } else {
            h_exact(&Composition::single(i as u32), n)
        }
    });
    let (num, d) = newton(j, &s);
    Ok(num / Rational::from_integer(BigInt::from(d)))
}

/// Modular `H({1}^j; n)` for `j ≤ 4` from the Newton formulas; needs the
/// divisor `j!` invertible modulo p.
pub fn h_ones_mod(j: usize, n: u64, ctx: &ModContext) -> Result<PadicNumber> {
    check_ones_depth(j)?;
    let mut session = HarmonicSession::new(ctx, n)?;
    let s: [PadicNumber; 5] = std::array::from_fn(|i| {
        if i == 0 {
            PadicNumber::zero(ctx.p())
        } else {
            session.value(&Composition::single(i as u32))
        }
    });
    let (num, d) = newton(j, &s);
    let dinv = ctx.mod_inverse(d as i128)?;
    Ok(num * PadicNumber::from_residue(ctx.p(), dinv, ctx.k()))
}

/// `H({1}^j; m)` for `j = 0..=m` by the Pascal-type recurrence
/// `H({1}^j; k) = H({1}^j; k-1) + H({1}^(j-1); k-1)/k`.
pub fn ones_table(m: u64) -> Vec<Rational> {
    let m = m as usize;
    let mut row = vec![Rational::zero(); m + 1];
    row[0] = Rational::one();
    for k in 1..=m {
        let inv_k = Rational::new(BigInt::one(), BigInt::from(k));
        for j in (1..=k).rev() {
            let carry = &row[j - 1] * &inv_k;
            row[j] += carry;
        }
    }
    row
}

/// Which binomial coefficient [`expand_binomial_via_h`] rebuilds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinomialVariant {
    /// `C(n, k)`
    Falling,
    /// `C(n + k - 1, k)`
    Rising,
}

/// `C(n,k)` or `C(n+k-1,k)` through the expansion in `H({1}^j; k-1)`:
///
/// `C(n,k) = (-1)^(k-1) (n/k) Σ_j (-n)^j H({1}^j; k-1)` and
/// `C(n+k-1,k) = (n/k) Σ_j n^j H({1}^j; k-1)`.
pub fn expand_binomial_via_h(n: i64, k: i64, variant: BinomialVariant) -> Result<Rational> {
    if k < 1 || k >= n {
        return Err(Error::OutOfRange(format!(
            "expansion needs 1 <= k <= n-1 (n = {n}, k = {k})"
        )));
    }
    let table = ones_table((k - 1) as u64);
    Ok(expand_with_table(n, k, variant, &table))
}

/// Same as [`expand_binomial_via_h`] with a precomputed [`ones_table`] of
/// `H({1}^j; k-1)`.
pub fn expand_with_table(n: i64, k: i64, variant: BinomialVariant, table: &[Rational]) -> Rational {
    let step = match variant {
        BinomialVariant::Falling => -n,
        BinomialVariant::Rising => n,
    };
    let step = Rational::from_integer(BigInt::from(step));
    let mut power = Rational::one();
    let mut acc = Rational::zero();
    for h in table.iter().take(k as usize) {
        acc += &power * h;
        power *= &step;
    }
    let mut out = acc * Rational::new(BigInt::from(n), BigInt::from(k));
    if variant == BinomialVariant::Falling && k % 2 == 0 {
        out = -out;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{binomial_exact, int, ratio, reduce_mod};

    fn comp(parts: &[u32]) -> Composition {
        Composition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn exact_examples() {
        assert_eq!(h_exact(&comp(&[1]), 4), ratio(25, 12));
        assert_eq!(h_exact(&comp(&[1, 2]), 3), ratio(5, 12));
        assert_eq!(h_exact(&comp(&[1, 1]), 3), int(1));
        assert_eq!(h_exact(&comp(&[2]), 0), int(0));
        assert_eq!(h_exact(&comp(&[1, 1, 1]), 2), int(0));
        assert_eq!(h_exact(&comp(&[1]), 6), ratio(49, 20));
    }

    #[test]
    fn prefix_recursion_matches_enumeration() {
        for parts in [
            &[1][..],
            &[2, 1],
            &[1, 2],
            &[1, 1, 2],
            &[3, 1, 2],
            &[1, 1, 1, 1],
        ] {
            let c = comp(parts);
            for n in 0..9 {
                assert_eq!(h_exact(&c, n), h_exact_brute(&c, n), "{c} n={n}");
            }
        }
    }

    #[test]
    fn modular_examples() {
        let c5 = ModContext::new(5, 2).unwrap();
        assert_eq!(
            h_mod(&comp(&[1]), 4, &c5).unwrap().residue_at(2).unwrap(),
            (2, 0)
        );
        let c51 = ModContext::new(5, 1).unwrap();
        assert!(h_mod(&comp(&[2]), 4, &c51).unwrap().is_zero());
        let c7 = ModContext::new(7, 1).unwrap();
        assert_eq!(
            h_mod(&comp(&[1, 2]), 6, &c7).unwrap(),
            reduce_mod(&h_exact(&comp(&[1, 2]), 6), &c7)
        );
        assert!(h_mod(&comp(&[1]), 7, &c7).is_err());
    }

    #[test]
    fn power_sums() {
        assert_eq!(power_sum_mod(2, &ModContext::new(5, 1).unwrap()), 0);
        assert_eq!(power_sum_mod(4, &ModContext::new(5, 1).unwrap()), 4);
        assert_eq!(power_sum_mod(0, &ModContext::new(7, 3).unwrap()), 6);
        assert_eq!(power_sum_mod(4, &ModContext::new(5, 4).unwrap()), 354);
    }

    #[test]
    fn newton_examples() {
        assert_eq!(h_ones_exact(2, 3).unwrap(), int(1));
        assert_eq!(h_ones_exact(1, 7).unwrap(), h_exact(&comp(&[1]), 7));
        assert_eq!(
            h_ones_exact(4, 5).unwrap(),
            h_exact_brute(&comp(&[1, 1, 1, 1]), 5)
        );
        assert!(h_ones_exact(5, 5).is_err());
        assert!(h_ones_exact(0, 5).is_err());
        let ctx = ModContext::new(11, 4).unwrap();
        for j in 1..=4 {
            assert_eq!(
                h_ones_mod(j, 10, &ctx).unwrap().residue_at(4).unwrap(),
                reduce_mod(&h_exact(&Composition::ones(j).unwrap(), 10), &ctx)
                    .residue_at(4)
                    .unwrap()
            );
        }
        assert!(h_ones_mod(3, 2, &ModContext::new(3, 2).unwrap()).is_err());
    }

    #[test]
    fn expansion_examples() {
        use BinomialVariant::*;
        assert_eq!(expand_binomial_via_h(5, 2, Falling).unwrap(), int(10));
        assert_eq!(expand_binomial_via_h(5, 2, Rising).unwrap(), int(15));
        assert_eq!(
            expand_binomial_via_h(6, 3, Falling).unwrap(),
            binomial_exact(6, 3).unwrap()
        );
        assert_eq!(expand_binomial_via_h(9, 1, Falling).unwrap(), int(9));
        assert_eq!(expand_binomial_via_h(9, 1, Rising).unwrap(), int(9));
        assert!(expand_binomial_via_h(5, 5, Falling).is_err());
        assert!(expand_binomial_via_h(5, 0, Rising).is_err());
    }

    #[test]
    fn composition_parsing() {
        let c: Composition = "1, 1,2".parse().unwrap();
        assert_eq!(c.parts(), &[1, 1, 2]);
        assert_eq!(c.to_string(), "1,1,2");
        assert!("1,0".parse::<Composition>().is_err());
        assert!("".parse::<Composition>().is_err());
    }
}
