use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_modular::{ModularCoreOps, ModularPow};
use num_traits::Zero;

use super::modctx::{max_digits, mod_inverse_u128};
use super::{bigint_mod_u128, split_p_power, ModContext, Rational};
use crate::{Error, Result};

/// Fixed-precision p-adic number `p^valuation * unit`.
///
/// The unit is known modulo `p^precision` (its relative precision), so the
/// value is known modulo `p^(valuation + precision)`, the absolute precision.
/// Zero is a separate state: either exactly zero, or zero modulo some
/// `p^abs` after cancellation exhausted every significant digit.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PadicNumber {
    prime: u64,
    repr: Repr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Repr {
    /// Zero modulo `p^abs`; `None` means exactly zero.
    Zero(Option<i64>),
    Unit {
        valuation: i64,
        unit: u128,
        precision: u32,
    },
}

#[inline]
fn p_pow(p: u64, n: u32) -> u128 {
    (p as u128).pow(n)
}

/// Splits `r = p^e * rest` for a nonzero residue.
fn split_residue(p: u64, mut r: u128) -> (u32, u128) {
    let pp = p as u128;
    let mut e = 0;
    while r.is_multiple_of(pp) {
        r /= pp;
        e += 1;
    }
    (e, r)
}

/// `u * p^shift mod p^digits`, without overflow.
fn shift_mod(p: u64, u: u128, shift: i64, digits: u32) -> u128 {
    if shift >= digits as i64 {
        return 0;
    }
    let s = shift as u32;
    (u % p_pow(p, digits - s)) * p_pow(p, s)
}

impl PadicNumber {
    pub fn zero(p: u64) -> Self {
        PadicNumber {
            prime: p,
            repr: Repr::Zero(None),
        }
    }

    /// Zero known only modulo `p^abs`.
    pub fn zero_to(p: u64, abs: i64) -> Self {
        PadicNumber {
            prime: p,
            repr: Repr::Zero(Some(abs)),
        }
    }

    pub fn one(p: u64, precision: u32) -> Self {
        Self::from_residue(p, 1, precision)
    }

    /// Builds `p^valuation * unit` with `unit` taken modulo `p^precision`;
    /// any p-factors left in `unit` are moved into the valuation.
    pub fn from_parts(p: u64, valuation: i64, unit: u128, precision: u32) -> Self {
        Self::from_residue_at(p, unit % p_pow(p, precision), valuation, precision)
    }

    /// The value `residue * p^base` where `residue` is known modulo `p^digits`.
    fn from_residue_at(p: u64, residue: u128, base: i64, digits: u32) -> Self {
        if digits == 0 || residue == 0 {
            return Self::zero_to(p, base + digits as i64);
        }
        let (e, u) = split_residue(p, residue);
        PadicNumber {
            prime: p,
            repr: Repr::Unit {
                valuation: base + e as i64,
                unit: u,
                precision: digits - e,
            },
        }
    }

    /// An integer known modulo `p^digits` (absolute precision `digits`).
    pub fn from_residue(p: u64, residue: u128, digits: u32) -> Self {
        Self::from_residue_at(p, residue % p_pow(p, digits), 0, digits)
    }

    /// A small exact integer at the largest representable precision.
    pub fn exact_int(p: u64, n: i128) -> Self {
        Self::from_i128(p, n, max_digits(p))
    }

    /// An exact integer, stored with `digits` significant digits.
    pub fn from_i128(p: u64, n: i128, digits: u32) -> Self {
        if n == 0 {
            return Self::zero(p);
        }
        let mut v = 0;
        let mut rest = n;
        while rest % p as i128 == 0 {
            rest /= p as i128;
            v += 1;
        }
        let m = p_pow(p, digits);
        let unit = rest.rem_euclid(m as i128) as u128;
        Self::from_parts(p, v, unit, digits)
    }

    pub fn from_bigint(p: u64, n: &BigInt, digits: u32) -> Self {
        if n.is_zero() {
            return Self::zero(p);
        }
        let (v, rest) = split_p_power(n, p);
        Self::from_parts(
            p,
            v as i64,
            bigint_mod_u128(&rest, p_pow(p, digits)),
            digits,
        )
    }

    /// Reduction of an exact rational with `digits` significant digits.
    pub fn from_rational(p: u64, r: &Rational, digits: u32) -> Self {
        if r.is_zero() {
            return Self::zero(p);
        }
        let m = p_pow(p, digits);
        let (vn, n) = split_p_power(r.numer(), p);
        let (vd, d) = split_p_power(r.denom(), p);
        let nu = bigint_mod_u128(&n, m);
        let du = bigint_mod_u128(&d, m);
        let dinv = mod_inverse_u128(du, m).expect("denominator unit is invertible");
        Self::from_parts(p, vn as i64 - vd as i64, nu.mulm(dinv, &m), digits)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    /// p-adic valuation; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        match self.repr {
            Repr::Zero(_) => None,
            Repr::Unit { valuation, .. } => Some(valuation),
        }
    }

    /// The unit part, in `[0, p^precision)`; zero for zero.
    pub fn unit(&self) -> u128 {
        match self.repr {
            Repr::Zero(_) => 0,
            Repr::Unit { unit, .. } => unit,
        }
    }

    /// Number of significant p-adic digits of the unit (0 for zero).
    pub fn precision(&self) -> u32 {
        match self.repr {
            Repr::Zero(_) => 0,
            Repr::Unit { precision, .. } => precision,
        }
    }

    /// The value is known modulo `p^absolute_precision`; `None` when exact zero.
    pub fn absolute_precision(&self) -> Option<i64> {
        match self.repr {
            Repr::Zero(abs) => abs,
            Repr::Unit {
                valuation,
                precision,
                ..
            } => Some(valuation + precision as i64),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero(_))
    }

    /// Zero because every significant digit cancelled, not because the
    /// value is known to be exactly zero.
    pub fn is_cancelled(&self) -> bool {
        matches!(self.repr, Repr::Zero(Some(_)))
    }

    fn check_prime(&self, other: &Self) {
        assert_eq!(
            self.prime, other.prime,
            "p-adic operands over different primes"
        );
    }

    pub fn inv(&self) -> Result<Self> {
        match self.repr {
            Repr::Zero(None) => Err(Error::DivisionByZero),
            Repr::Zero(Some(abs)) => Err(Error::InsufficientPrecision {
                p: self.prime,
                available: abs,
            }),
            Repr::Unit {
                valuation,
                unit,
                precision,
            } => {
                let m = p_pow(self.prime, precision);
                let inv = mod_inverse_u128(unit, m).expect("unit is coprime to p");
                Ok(PadicNumber {
                    prime: self.prime,
                    repr: Repr::Unit {
                        valuation: -valuation,
                        unit: inv,
                        precision,
                    },
                })
            }
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if self.prime != rhs.prime {
            return Err(Error::PrimeMismatch(self.prime, rhs.prime));
        }
        Ok(*self * rhs.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        Ok(match self.repr {
            _ if e == 0 => Self::one(self.prime, max_digits(self.prime)),
            Repr::Zero(None) => *self,
            Repr::Zero(Some(abs)) => Self::zero_to(self.prime, abs.saturating_mul(e)),
            Repr::Unit {
                valuation,
                unit,
                precision,
            } => {
                let m = p_pow(self.prime, precision);
                PadicNumber {
                    prime: self.prime,
                    repr: Repr::Unit {
                        valuation: valuation * e,
                        unit: unit.powm(e as u128, &m),
                        precision,
                    },
                }
            }
        })
    }

    /// Multiplication by `p^e`.
    pub fn shift(&self, e: i64) -> Self {
        let repr = match self.repr {
            Repr::Zero(None) => Repr::Zero(None),
            Repr::Zero(Some(abs)) => Repr::Zero(Some(abs + e)),
            Repr::Unit {
                valuation,
                unit,
                precision,
            } => Repr::Unit {
                valuation: valuation + e,
                unit,
                precision,
            },
        };
        PadicNumber {
            prime: self.prime,
            repr,
        }
    }

    /// Forgets every digit at or beyond `p^abs`.
    pub fn truncate(&self, abs: i64) -> Self {
        match self.repr {
            Repr::Zero(None) => *self,
            Repr::Zero(Some(a)) => Self::zero_to(self.prime, a.min(abs)),
            Repr::Unit {
                valuation,
                unit,
                precision,
            } => {
                let new_abs = abs.min(valuation + precision as i64);
                if valuation >= new_abs {
                    return Self::zero_to(self.prime, new_abs);
                }
                let digits = (new_abs - valuation) as u32;
                Self::from_parts(self.prime, valuation, unit, digits)
            }
        }
    }

    /// The value modulo `p^t` as `(valuation, unit)`, the unit taken modulo
    /// `p^(t - valuation)`. A value divisible by `p^t` is reported as `(t, 0)`.
    /// Fails when the value is not known modulo `p^t`.
    pub fn residue_at(&self, t: i64) -> Result<(i64, u128)> {
        match self.absolute_precision() {
            Some(abs) if abs < t => {
                return Err(Error::InsufficientPrecision {
                    p: self.prime,
                    available: abs,
                })
            }
            _ => {}
        }
        let tr = self.truncate(t);
        Ok(match tr.repr {
            Repr::Zero(_) => (t, 0),
            Repr::Unit {
                valuation, unit, ..
            } => (valuation, unit),
        })
    }

    /// `true` iff `val_p(self - other) ≥ t`.
    pub fn congruent(&self, other: &Self, t: i64) -> Result<bool> {
        padic_congruent(self, other, t)
    }
}

/// Decides `x ≡ y (mod p^t)`. Undecidable when the difference cancels to
/// zero but is only known modulo a power below `p^t`.
pub fn padic_congruent(x: &PadicNumber, y: &PadicNumber, t: i64) -> Result<bool> {
    if x.prime != y.prime {
        return Err(Error::PrimeMismatch(x.prime, y.prime));
    }
    let d = *x - *y;
    match d.repr {
        Repr::Zero(None) => Ok(true),
        Repr::Zero(Some(abs)) if abs >= t => Ok(true),
        Repr::Zero(Some(abs)) => Err(Error::Undecidable { t, available: abs }),
        Repr::Unit { valuation, .. } => Ok(valuation >= t),
    }
}

/// Reduces an exact rational into the p-adic world at the context's precision.
pub fn reduce_mod(r: &Rational, ctx: &ModContext) -> PadicNumber {
    PadicNumber::from_rational(ctx.p(), r, ctx.k())
}

impl Add for PadicNumber {
    type Output = PadicNumber;

    fn add(self, rhs: PadicNumber) -> PadicNumber {
        self.check_prime(&rhs);
        let p = self.prime;
        match (self.repr, rhs.repr) {
            (Repr::Zero(None), _) => rhs,
            (_, Repr::Zero(None)) => self,
            (Repr::Zero(Some(a)), Repr::Zero(Some(b))) => Self::zero_to(p, a.min(b)),
            (Repr::Zero(Some(a)), Repr::Unit { .. }) => rhs.truncate(a),
            (Repr::Unit { .. }, Repr::Zero(Some(b))) => self.truncate(b),
            (
                Repr::Unit {
                    valuation: va,
                    unit: ua,
                    precision: na,
                },
                Repr::Unit {
                    valuation: vb,
                    unit: ub,
                    precision: nb,
                },
            ) => {
                let base = va.min(vb);
                let abs = (va + na as i64).min(vb + nb as i64);
                if abs <= base {
                    return Self::zero_to(p, abs);
                }
                let digits = (abs - base) as u32;
                let m = p_pow(p, digits);
                let x = shift_mod(p, ua, va - base, digits);
                let y = shift_mod(p, ub, vb - base, digits);
                Self::from_residue_at(p, x.addm(y, &m), base, digits)
            }
        }
    }
}

impl Neg for PadicNumber {
    type Output = PadicNumber;

    fn neg(self) -> PadicNumber {
        match self.repr {
            Repr::Zero(_) => self,
            Repr::Unit {
                valuation,
                unit,
                precision,
            } => {
                let m = p_pow(self.prime, precision);
                PadicNumber {
                    prime: self.prime,
                    repr: Repr::Unit {
                        valuation,
                        unit: m - unit,
                        precision,
                    },
                }
            }
        }
    }
}

impl Sub for PadicNumber {
    type Output = PadicNumber;

    fn sub(self, rhs: PadicNumber) -> PadicNumber {
        self + (-rhs)
    }
}

impl Mul for PadicNumber {
    type Output = PadicNumber;

    fn mul(self, rhs: PadicNumber) -> PadicNumber {
        self.check_prime(&rhs);
        let p = self.prime;
        match (self.repr, rhs.repr) {
            (Repr::Zero(None), _) | (_, Repr::Zero(None)) => Self::zero(p),
            (Repr::Zero(Some(a)), Repr::Zero(Some(b))) => Self::zero_to(p, a + b),
            (Repr::Zero(Some(a)), Repr::Unit { valuation, .. })
            | (Repr::Unit { valuation, .. }, Repr::Zero(Some(a))) => {
                Self::zero_to(p, a + valuation)
            }
            (
                Repr::Unit {
                    valuation: va,
                    unit: ua,
                    precision: na,
                },
                Repr::Unit {
                    valuation: vb,
                    unit: ub,
                    precision: nb,
                },
            ) => {
                let n = na.min(nb);
                let m = p_pow(p, n);
                PadicNumber {
                    prime: p,
                    repr: Repr::Unit {
                        valuation: va + vb,
                        unit: (ua % m).mulm(ub % m, &m),
                        precision: n,
                    },
                }
            }
        }
    }
}

impl std::iter::Sum for PadicNumber {
    /// Panics on an empty iterator; there is no prime to build a zero from.
    fn sum<I: Iterator<Item = PadicNumber>>(mut iter: I) -> PadicNumber {
        let first = iter.next().expect("sum of an empty p-adic iterator");
        iter.fold(first, |acc, x| acc + x)
    }
}

impl fmt::Debug for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for PadicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.prime;
        match self.repr {
            Repr::Zero(None) => write!(f, "0"),
            Repr::Zero(Some(abs)) => write!(f, "O({p}^{abs})"),
            Repr::Unit {
                valuation,
                unit,
                precision,
            } => write!(
                f,
                "{unit} * {p}^{valuation} + O({p}^{})",
                valuation + precision as i64
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, ratio};

    fn ctx(p: u64, k: u32) -> ModContext {
        ModContext::new(p, k).unwrap()
    }

    #[test]
    fn reduce_examples() {
        let x = reduce_mod(&ratio(1, 2), &ctx(5, 2));
        assert_eq!((x.valuation(), x.unit(), x.precision()), (Some(0), 13, 2));
        // 12^{-1} mod 25 = 23 (12 * 23 = 276 = 11 * 25 + 1).
        let y = reduce_mod(&ratio(25, 12), &ctx(5, 2));
        assert_eq!((y.valuation(), y.unit()), (Some(2), 23));
        assert!(reduce_mod(&int(0), &ctx(5, 2)).is_zero());
        // H(1) at p = 7 is 49/20.
        let h = reduce_mod(&ratio(49, 20), &ctx(7, 2));
        assert_eq!(h.residue_at(2).unwrap(), (2, 0));
    }

    #[test]
    fn additive_inverse_cancels_with_flag() {
        let x = PadicNumber::from_parts(5, 1, 7, 3);
        let y = -x;
        let s = x + y;
        assert!(s.is_zero());
        assert!(s.is_cancelled());
        assert_eq!(s.absolute_precision(), Some(4));
        assert!(matches!(s.inv(), Err(Error::InsufficientPrecision { .. })));
    }

    #[test]
    fn valuation_is_additive() {
        let a = PadicNumber::from_parts(5, -1, 3, 4);
        let b = PadicNumber::from_parts(5, 2, 7, 4);
        let c = a * b;
        assert_eq!(c.valuation(), Some(1));
        assert_eq!(c.unit(), 21);
    }

    #[test]
    fn inverse_example() {
        let three = reduce_mod(&int(3), &ctx(7, 2));
        assert_eq!(three.inv().unwrap().unit(), 33);
        assert_eq!(PadicNumber::zero(7).inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn addition_loses_digits_on_cancellation() {
        // 1 + 24 = 25 = 5^2 * 1, known mod 5^3.
        let a = PadicNumber::from_residue(5, 1, 3);
        let b = PadicNumber::from_residue(5, 24, 3);
        let s = a + b;
        assert_eq!(s.valuation(), Some(2));
        assert_eq!(s.precision(), 1);
        assert_eq!(s.absolute_precision(), Some(3));
    }

    #[test]
    fn addition_aligns_valuations() {
        // 5^-1 * 2 + 3 with 4 digits each: abs precision min(3, 4) = 3.
        let a = PadicNumber::from_parts(5, -1, 2, 4);
        let b = PadicNumber::from_parts(5, 0, 3, 4);
        let s = a + b;
        assert_eq!(s.valuation(), Some(-1));
        assert_eq!(s.absolute_precision(), Some(3));
        assert_eq!(s.unit(), 2 + 15);
    }

    #[test]
    fn congruence_examples() {
        let c = ctx(3, 2);
        let x = reduce_mod(&ratio(13, 8), &c);
        let y = reduce_mod(&ratio(1, 2), &c);
        assert_eq!(x.unit(), 5);
        assert!(x.congruent(&y, 2).unwrap());
        let one = reduce_mod(&int(1), &ctx(7, 3));
        let other = reduce_mod(&int(8), &ctx(7, 3));
        assert!(!one.congruent(&other, 2).unwrap());
        assert!(one.congruent(&one, 3).unwrap());
        assert!(matches!(
            one.congruent(&one, 4),
            Err(Error::Undecidable { t: 4, available: 3 })
        ));
    }

    #[test]
    fn zero_semantics() {
        let z = PadicNumber::zero(7);
        let x = PadicNumber::from_residue(7, 3, 2);
        assert_eq!(z + x, x);
        assert!((z * x).is_zero());
        assert!(z.congruent(&PadicNumber::zero_to(7, 5), 5).unwrap());
        assert_eq!(z.residue_at(3).unwrap(), (3, 0));
    }

    #[test]
    fn pow_and_shift() {
        let two = PadicNumber::from_residue(7, 2, 3);
        let inv8 = two.pow(-3).unwrap();
        assert_eq!((inv8 * PadicNumber::from_residue(7, 8, 3)).unit(), 1);
        let p = PadicNumber::from_residue(7, 7, 3);
        assert_eq!(p.valuation(), Some(1));
        assert_eq!(two.shift(2).valuation(), Some(2));
    }
}
