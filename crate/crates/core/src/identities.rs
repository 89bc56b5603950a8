//! Exact verification of the finite identities behind the congruences.
//!
//! Everything here is computed over exact rationals; the congruence-flavored
//! checks ([`t33_termwise`], [`t42_product_congruence`]) compare rationals by
//! the p-adic valuation of their difference. [`series_partial`] is the only
//! floating-point code in the crate.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{binomial, int, lucas_uv_exact, ratio, valuation, Rational};
use crate::harmonic::{expand_with_table, ones_table, BinomialVariant};
use crate::{Error, Result};

/// Outcome of one identity at one parameter set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityResult {
    pub id: &'static str,
    pub params: String,
    pub lhs: Rational,
    pub rhs: Rational,
    /// A third equivalent form, for chained congruences.
    pub aux: Option<Rational>,
    /// `Some((p, t))` for congruences modulo `p^t`, `None` for equalities.
    pub modulus: Option<(u64, i64)>,
    pub pass: bool,
    pub discrepancy: Rational,
}

impl IdentityResult {
    fn equality(id: &'static str, params: String, lhs: Rational, rhs: Rational) -> Self {
        let discrepancy = &lhs - &rhs;
        IdentityResult {
            id,
            params,
            pass: discrepancy.is_zero(),
            lhs,
            rhs,
            aux: None,
            modulus: None,
            discrepancy,
        }
    }

    fn congruence(id: &'static str, params: String, forms: Vec<Rational>, p: u64, t: i64) -> Self {
        let congruent = |a: &Rational, b: &Rational| valuation(&(a - b), p).is_none_or(|v| v >= t);
        let pass = forms.windows(2).all(|w| congruent(&w[0], &w[1]));
        let mut it = forms.into_iter();
        let lhs = it.next().expect("at least two forms");
        let rhs = it.next().expect("at least two forms");
        let aux = it.next();
        IdentityResult {
            id,
            params,
            discrepancy: &lhs - &rhs,
            lhs,
            rhs,
            aux,
            modulus: Some((p, t)),
            pass,
        }
    }
}

impl fmt::Display for IdentityResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "pass" } else { "FAIL" };
        write!(f, "{verdict} {} [{}]", self.id, self.params)?;
        match self.modulus {
            None if self.pass => Ok(()),
            None => write!(f, " lhs={} rhs={}", self.lhs, self.rhs),
            Some((p, t)) => {
                let v = valuation(&self.discrepancy, p)
                    .map_or_else(|| "inf".to_string(), |v| v.to_string());
                write!(f, " mod {p}^{t}, val(lhs-rhs)={v}")
            }
        }
    }
}

fn q(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

fn sign(k: i64) -> Rational {
    if k % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

fn pow_i(k: i64, e: u32) -> Rational {
    q(BigInt::from(k).pow(e))
}

fn binom(n: i64, k: i64) -> Rational {
    q(binomial(n, k).expect("nonnegative lower index"))
}

/// `Σ_{k≤n} 1/k² = Σ_{1≤i≤j≤n} (-1)^(j-1)/(ij) · C(n,j)`.
pub fn hernandez(n: i64) -> IdentityResult {
    let mut lhs = Rational::zero();
    let mut rhs = Rational::zero();
    let mut inner = Rational::zero(); // Σ_{i≤j} 1/i
    for j in 1..=n {
        lhs += ratio(1, j * j);
        inner += ratio(1, j);
        rhs += -sign(j) * binom(n, j) * &inner / int(j);
    }
    IdentityResult::equality("hernandez", format!("n={n}"), lhs, rhs)
}

/// `Σ_{k≤n} (-1)^k / (k^r C(n+k,k) C(n,k))`.
fn apery_tail(n: i64, r: u32) -> Rational {
    (1..=n)
        .map(|k| sign(k) / (pow_i(k, r) * binom(n + k, k) * binom(n, k)))
        .sum()
}

/// `Σ 1/(k² C(2k,k)) = -(2/3) Σ (-1)^k/k² - ((-1)^n/3) Σ (-1)^k/(k² C(n+k,k) C(n,k))`.
pub fn apery_quadratic(n: i64) -> IdentityResult {
    let lhs: Rational = (1..=n)
        .map(|k| Rational::one() / (pow_i(k, 2) * binom(2 * k, k)))
        .sum();
    let alt: Rational = (1..=n).map(|k| sign(k) / pow_i(k, 2)).sum();
    let rhs = ratio(-2, 3) * alt - sign(n) * ratio(1, 3) * apery_tail(n, 2);
    IdentityResult::equality("apery_quadratic", format!("n={n}"), lhs, rhs)
}

/// `Σ (-1)^k/(k³ C(2k,k)) = -(2/5) Σ 1/k³ + (1/5) Σ (-1)^k/(k³ C(n+k,k) C(n,k))`.
pub fn apery_cubic(n: i64) -> IdentityResult {
    let lhs: Rational = (1..=n)
        .map(|k| sign(k) / (pow_i(k, 3) * binom(2 * k, k)))
        .sum();
    let cubes: Rational = (1..=n).map(|k| Rational::one() / pow_i(k, 3)).sum();
    let rhs = ratio(-2, 5) * cubes + ratio(1, 5) * apery_tail(n, 3);
    IdentityResult::equality("apery_cubic", format!("n={n}"), lhs, rhs)
}

/// `(5/2) Σ_{k≤n} C(2k,k) k²/(4n⁴+k⁴) Π_{j<k} (n⁴-j⁴)/(4n⁴+j⁴) = 1/n²`.
pub fn bb_ag(n: i64) -> IdentityResult {
    let n4 = pow_i(n, 4);
    let four_n4 = int(4) * &n4;
    let mut product = Rational::one();
    let mut sum = Rational::zero();
    for k in 1..=n {
        let k4 = pow_i(k, 4);
        sum += binom(2 * k, k) * pow_i(k, 2) / (&four_n4 + &k4) * &product;
        product *= (&n4 - &k4) / (&four_n4 + &k4);
    }
    let lhs = ratio(5, 2) * sum;
    let rhs = ratio(1, n * n);
    IdentityResult::equality("bb_ag", format!("n={n}"), lhs, rhs)
}

/// `Σ_{k=1}^n C(n,k) C(n-1+k,k-1) C(2k,k)^(-1) (-m)^k = -(m/2) u_n(2-m)`.
pub fn t31_u_identity(n: i64, m: i64) -> IdentityResult {
    let lhs: Rational = (1..=n)
        .map(|k| binom(n, k) * binom(n - 1 + k, k - 1) / binom(2 * k, k) * pow_signed(-m, k))
        .sum();
    let (u, _) = lucas_uv_exact(n as u64, &BigInt::from(2 - m));
    let rhs = ratio(-m, 2) * q(u);
    IdentityResult::equality("t31_u", format!("n={n};m={m}"), lhs, rhs)
}

/// `Σ_{k=0}^n C(n,k) C(n-1+k,k) C(2k,k)^(-1) (-m)^k = (1/2) v_n(2-m)`.
pub fn t31_v_identity(n: i64, m: i64) -> IdentityResult {
    let lhs: Rational = (0..=n)
        .map(|k| binom(n, k) * binom(n - 1 + k, k) / binom(2 * k, k) * pow_signed(-m, k))
        .sum();
    let (_, v) = lucas_uv_exact(n as u64, &BigInt::from(2 - m));
    let rhs = ratio(1, 2) * q(v);
    IdentityResult::equality("t31_v", format!("n={n};m={m}"), lhs, rhs)
}

fn pow_signed(base: i64, e: i64) -> Rational {
    q(BigInt::from(base).pow(e as u32))
}

/// Both binomial expansions through `H({1}^j; k-1)`: `C(n,k)` (falling) and
/// `C(n+k-1,k)` (rising).
pub fn l23_expansions(n: i64, k: i64) -> Result<[IdentityResult; 2]> {
    if k < 1 || k >= n {
        return Err(Error::OutOfRange(format!(
            "need 1 <= k < n, got n={n}, k={k}"
        )));
    }
    let table = ones_table((k - 1) as u64);
    let params = format!("n={n};k={k}");
    Ok([
        IdentityResult::equality(
            "l23_falling",
            params.clone(),
            expand_with_table(n, k, BinomialVariant::Falling, &table),
            binom(n, k),
        ),
        IdentityResult::equality(
            "l23_rising",
            params,
            expand_with_table(n, k, BinomialVariant::Rising, &table),
            binom(n + k - 1, k),
        ),
    ])
}

/// `(p/k) C(2k,k)^(-1) ≡ (1/2) C(2(p-k),p-k) ≡ (-1)^k C(k-1,p-k-1) (mod p)`.
///
/// Meaningful for `(p+1)/2 ≤ k ≤ p-1`; below that range all three forms are
/// divisible by p and the check passes trivially.
pub fn t33_termwise(p: u64, k: i64) -> Result<IdentityResult> {
    let pi = p as i64;
    if k < 1 || k >= pi {
        return Err(Error::OutOfRange(format!("need 1 <= k <= p-1, got k={k}")));
    }
    let first = int(pi) / (int(k) * binom(2 * k, k));
    let second = ratio(1, 2) * binom(2 * (pi - k), pi - k);
    let third = sign(k) * binom(k - 1, pi - k - 1);
    Ok(IdentityResult::congruence(
        "t33_termwise",
        format!("p={p};k={k}"),
        vec![first, second, third],
        p,
        1,
    ))
}

/// `Π_{j<k} (p⁴-j⁴)/(4p⁴+j⁴) ≡ (-1)^(k-1) (1 - 5p⁴ H(4; k-1)) (mod p⁸)`.
pub fn t42_product_congruence(p: u64, k: i64) -> Result<IdentityResult> {
    let pi = p as i64;
    if p <= 5 {
        return Err(Error::OutOfRange(format!("needs p > 5, got {p}")));
    }
    if k < 1 || k >= pi {
        return Err(Error::OutOfRange(format!("need 1 <= k <= p-1, got k={k}")));
    }
    let p4 = pow_i(pi, 4);
    let mut product = Rational::one();
    let mut h4 = Rational::zero();
    for j in 1..k {
        let j4 = pow_i(j, 4);
        product *= (&p4 - &j4) / (int(4) * &p4 + &j4);
        h4 += Rational::one() / j4;
    }
    let rhs = sign(k - 1) * (Rational::one() - int(5) * p4 * h4);
    Ok(IdentityResult::congruence(
        "t42_product",
        format!("p={p};k={k}"),
        vec![product, rhs],
        p,
        8,
    ))
}

/// The three infinite series illustrated by partial sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SeriesKind {
    /// `Σ 1/(k² C(2k,k)) = ζ(2)/3`
    Zeta2Third,
    /// `Σ (-1)^k/(k³ C(2k,k)) = -(2/5) ζ(3)`
    AperyZeta3,
    /// `Σ (-1)^k/(k C(2k,k)) = -(2/√5) log((1+√5)/2)`
    GoldenLog,
}

impl SeriesKind {
    pub const ALL: [SeriesKind; 3] = [
        SeriesKind::Zeta2Third,
        SeriesKind::AperyZeta3,
        SeriesKind::GoldenLog,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SeriesKind::Zeta2Third => "zeta2_third",
            SeriesKind::AperyZeta3 => "apery_zeta3",
            SeriesKind::GoldenLog => "golden_log",
        }
    }
}

impl FromStr for SeriesKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SeriesKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::OutOfRange(format!("unknown series `{s}`")))
    }
}

/// Double-precision partial sum of the first `terms` terms.
pub fn series_partial(kind: SeriesKind, terms: u32) -> f64 {
    // running 1/C(2k,k), updated by C(2k,k) = C(2k-2,k-1) (2k)(2k-1)/k²
    let mut inv_central = 1.0f64;
    let mut sum = 0.0f64;
    for k in 1..=terms {
        let kf = k as f64;
        inv_central *= kf * kf / ((2.0 * kf) * (2.0 * kf - 1.0));
        let alt = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += match kind {
            SeriesKind::Zeta2Third => inv_central / (kf * kf),
            SeriesKind::AperyZeta3 => alt * inv_central / (kf * kf * kf),
            SeriesKind::GoldenLog => alt * inv_central / kf,
        };
    }
    sum
}

/// Whether a congruence-style result's two sides are p-adic units, i.e.
/// carry no spurious factor of p.
pub fn sides_are_units(r: &IdentityResult) -> bool {
    match r.modulus {
        Some((p, _)) => [&r.lhs, &r.rhs].iter().all(|x| valuation(x, p) == Some(0)),
        None => false,
    }
}

/// Absolute discrepancy as a float, for display.
pub fn discrepancy_f64(r: &IdentityResult) -> f64 {
    use num_traits::ToPrimitive;
    r.discrepancy.abs().to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hernandez_small() {
        let r = hernandez(3);
        assert_eq!(r.lhs, ratio(49, 36));
        assert!(r.pass);
        assert_eq!(hernandez(1).lhs, int(1));
        assert!(hernandez(1).pass);
        assert!(hernandez(50).pass);
    }

    #[test]
    fn apery_small() {
        let q2 = apery_quadratic(2);
        assert_eq!(q2.lhs, ratio(13, 24));
        assert!(q2.pass);
        let q1 = apery_quadratic(1);
        assert_eq!((q1.lhs.clone(), q1.pass), (ratio(1, 2), true));
        let c1 = apery_cubic(1);
        assert_eq!(
            (c1.lhs.clone(), c1.rhs.clone()),
            (ratio(-1, 2), ratio(-1, 2))
        );
        assert!(apery_cubic(2).pass);
    }

    #[test]
    fn bb_ag_small() {
        let r = bb_ag(1);
        assert_eq!(r.lhs, int(1));
        assert!(r.pass);
        assert!(bb_ag(3).pass);
    }

    #[test]
    fn t31_at_n1() {
        for m in -3..=5 {
            let u = t31_u_identity(1, m);
            assert_eq!(u.lhs, ratio(-m, 2));
            assert!(u.pass);
            let v = t31_v_identity(1, m);
            assert_eq!(v.lhs, ratio(2 - m, 2));
            assert!(v.pass);
        }
    }

    #[test]
    fn l23_small() {
        let [f, r] = l23_expansions(6, 3).unwrap();
        assert_eq!(f.lhs, int(20));
        assert!(f.pass && r.pass);
        assert!(l23_expansions(10, 1).unwrap().iter().all(|r| r.pass));
        assert!(l23_expansions(4, 4).is_err());
    }

    #[test]
    fn t33_examples() {
        let r = t33_termwise(5, 3).unwrap();
        assert_eq!(r.lhs, ratio(1, 12));
        assert_eq!(r.rhs, int(3));
        assert_eq!(r.aux, Some(int(-2)));
        assert!(r.pass);
        assert!(t33_termwise(7, 4).unwrap().pass);
        let low = t33_termwise(5, 2).unwrap();
        assert!(low.pass);
        assert_eq!(valuation(&low.lhs, 5), Some(1));
        assert!(t33_termwise(5, 5).is_err());
    }

    #[test]
    fn t42_examples() {
        let r = t42_product_congruence(7, 1).unwrap();
        assert_eq!((r.lhs.clone(), r.rhs.clone()), (int(1), int(1)));
        assert!(t42_product_congruence(7, 3).unwrap().pass);
        for k in 1..11 {
            let r = t42_product_congruence(11, k).unwrap();
            assert!(r.pass && sides_are_units(&r));
        }
        assert!(t42_product_congruence(5, 2).is_err());
    }

    #[test]
    fn series_kinds_parse() {
        for k in SeriesKind::ALL {
            assert_eq!(k.name().parse::<SeriesKind>().unwrap(), k);
        }
        assert!("zeta5".parse::<SeriesKind>().is_err());
    }
}
