use crate::arith::legendre_symbol;
use crate::Result;

use super::backend::Backend;
use super::{CheckId, Params};

fn sum<B: Backend>(b: &mut B, mut f: impl FnMut(&mut B, u64) -> Result<B::V>) -> Result<B::V> {
    let mut acc = b.zero();
    for k in 1..b.p() {
        acc = acc + f(b, k)?;
    }
    Ok(acc)
}

/// `Σ_{k=1}^{p-1} ratio^k f(k)`, powers built incrementally.
fn geometric<B: Backend>(
    b: &mut B,
    ratio: B::V,
    mut f: impl FnMut(&mut B, u64) -> Result<B::V>,
) -> Result<B::V> {
    let mut acc = b.zero();
    let mut power = ratio.clone();
    for k in 1..b.p() {
        acc = acc + power.clone() * f(b, k)?;
        power = power * ratio.clone();
    }
    Ok(acc)
}

/// `Σ m^k / (k^r C(2k,k))`.
fn reciprocal_sum<B: Backend>(b: &mut B, m: i64, r: i64) -> Result<B::V> {
    let ratio = b.q(m, 1);
    geometric(b, ratio, |b, k| Ok(b.kpow(k, -r) * b.central(k, -1)?))
}

/// `B_m / d`, to be scaled by `p^weight`.
fn bernoulli_over<B: Backend>(b: &mut B, m: u64, weight: u32) -> Result<B::V> {
    Ok(b.bernoulli(m, weight)? * b.q(1, m as i64))
}

fn sign(n: i64) -> i64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Left and right side of a registry check at one prime.
pub(crate) fn evaluate<B: Backend>(
    id: CheckId,
    b: &mut B,
    params: &Params,
) -> Result<(B::V, B::V)> {
    let p = b.p();
    let pi = p as i64;
    Ok(match id.number() {
        1 => {
            let lhs = reciprocal_sum(b, 1, 2)?;
            let rhs = (b.h(&[1]) * b.q(1, 3)) * b.pp(-1);
            (lhs, rhs)
        }
        2 => {
            let lhs = reciprocal_sum(b, -1, 3)?;
            let rhs = (b.h(&[1]) * b.q(-2, 5)) * b.pp(-2);
            (lhs, rhs)
        }
        3 => {
            let minus = b.q(-1, 1);
            let lhs = geometric(b, minus, |b, k| Ok(b.central(k, 1)? * b.kpow(k, -2)))?;
            let inner = b.h(&[1]) * b.pp(-1) + (b.h(&[3]) * b.q(2, 1)) * b.pp(1);
            (lhs, inner * b.q(4, 5))
        }
        4 => {
            let lhs = sum(b, |b, k| Ok(b.central(k, 1)? * b.kpow(k, -1)))?;
            (lhs, b.h(&[1]) * b.q(-8, 3))
        }
        5 => {
            let rhs = (b.h(&[2]) * b.q(-1, 2)) * b.pp(1) + (b.h(&[3]) * b.q(-1, 6)) * b.pp(2);
            (b.h(&[1]), rhs)
        }
        6 => {
            let b1 = bernoulli_over(b, 3 * p - 5, 2)?;
            let b2 = bernoulli_over(b, 2 * p - 4, 2)?;
            let b3 = bernoulli_over(b, p - 3, 2)?;
            let b4 = bernoulli_over(b, p - 5, 4)?;
            let inner = b1 - b2 * b.q(3, 1) + b3 * b.q(3, 1);
            let rhs = inner * b.pp(2) + b4 * b.pp(4);
            (b.h(&[1]), rhs)
        }
        7 => {
            let rhs = match params.tag("form")? {
                "ph2" => (b.h(&[2]) * b.q(-1, 2)) * b.pp(1),
                _ => {
                    let b1 = bernoulli_over(b, p - 3, 2)?;
                    let b2 = bernoulli_over(b, 2 * p - 4, 2)?;
                    (b1 * b.q(2, 1) - b2) * b.pp(2)
                }
            };
            (b.h(&[1]), rhs)
        }
        8 => {
            let rhs = match params.tag("form")? {
                "ph4" => (b.h(&[4]) * b.q(-3, 2)) * b.pp(1),
                _ => {
                    let b1 = bernoulli_over(b, p - 5, 2)?;
                    (b1 * b.q(6, 1)) * b.pp(2)
                }
            };
            (b.h(&[3]), rhs)
        }
        9 => (b.h(&[5]), b.zero()),
        10 => {
            let rhs = (b.h(&[1]) * b.q(-7, 1)) * b.pp(-1);
            (b.h_half(&[2]), rhs)
        }
        11 => {
            let (x, y) = (params.int("a")?, params.int("b")?);
            let s = x + y;
            let binom = crate::arith::binomial(s, x)?;
            let binom = i64::try_from(binom).expect("small binomial");
            let bern = b.bernoulli(p - s as u64, 0)?;
            (b.h(&[x as u32, y as u32]), bern * b.q(sign(y) * binom, s))
        }
        12 => (b.h(&[1, 1, 2]), b.zero()),
        13 => {
            let (lhs, c) = match params.tag("form")? {
                "h12" => (b.h(&[1, 2]), -3),
                _ => (b.h(&[2, 1]), 3),
            };
            (lhs, (b.h(&[1]) * b.q(c, 1)) * b.pp(-2))
        }
        14 => {
            let mut lhs = b.q(1, 1);
            for k in 1..pi {
                lhs = lhs * b.q(pi + k, k);
            }
            let rhs =
                b.q(1, 1) + (b.h(&[1]) * b.q(2, 1)) * b.pp(1) + (b.h(&[3]) * b.q(2, 3)) * b.pp(3);
            (lhs, rhs)
        }
        15 => {
            let m = params.int("m")?;
            let lhs = reciprocal_sum(b, m, 1)? * b.pp(1);
            let (u, _) = b.lucas(p, 2 - m);
            let mp = b.pow(&b.q(m, 1), pi)?;
            (lhs, (b.q(m, 1) * u - mp) * b.q(1, 2))
        }
        16 => {
            let m = params.int("m")?;
            let lhs = reciprocal_sum(b, m, 2)? * b.pp(1);
            let (_, v) = b.lucas(p, 2 - m);
            let mp = b.pow(&b.q(m, 1), pi)?;
            let rhs = ((b.q(2, 1) - v - mp) * b.q(1, 2)) * b.pp(-1);
            (lhs, rhs)
        }
        17 => {
            let lhs = reciprocal_sum(b, 1, 2)? * b.pp(1);
            let delta = i64::from(p == 3);
            (lhs, b.q(delta, 2))
        }
        18 => {
            let lhs = reciprocal_sum(b, 1, 1)? * b.pp(1);
            let leg = legendre_symbol(pi as i128, 3) as i64;
            (lhs, b.q(leg - 1, 2))
        }
        19 => {
            let lhs = reciprocal_sum(b, -1, 2)? * b.pp(1);
            let (_, l) = b.fib(p);
            let rhs = ((b.q(1, 1) - l.clone() * l) * b.q(1, 2)) * b.pp(-1);
            (lhs, rhs)
        }
        20 => {
            let lhs = reciprocal_sum(b, -1, 1)? * b.pp(1);
            let (f, l) = b.fib(p);
            (lhs, (b.q(1, 1) - l * f) * b.q(1, 2))
        }
        21 => {
            let lhs = reciprocal_sum(b, 2, 2)? * b.pp(1);
            (lhs, -b.fermat(2)?)
        }
        22 => {
            let lhs = reciprocal_sum(b, 2, 1)? * b.pp(1);
            let leg = legendre_symbol(-1, p) as i64;
            let rhs = b.q(leg - 1, 1) - b.fermat(2)? * b.pp(1);
            (lhs, rhs)
        }
        23 => {
            let s = sum(b, |b, k| Ok(b.q(k as i64 + 1, 1) * b.central(k, -1)?))?;
            let leg = legendre_symbol(pi as i128, 3) as i64;
            (s * b.pp(1), b.q(2 * leg, 3))
        }
        24 => {
            let (m, r) = (params.int("m")?, params.int("r")?);
            let lhs = reciprocal_sum(b, m, r)? * b.pp(1);
            let inv_m = b.pow(&b.q(m, 1), -1)?;
            let dual = geometric(b, inv_m, |b, k| Ok(b.central(k, 1)? * b.kpow(k, 1 - r)))?;
            (lhs, dual * b.q(m * sign(r - 1), 2))
        }
        25 => {
            let minus = b.q(-1, 1);
            let lhs = geometric(b, minus, |b, k| Ok(b.kpow(k, -2)))?;
            (lhs, (b.h(&[1]) * b.q(-3, 2)) * b.pp(-1))
        }
        26 => {
            let minus = b.q(-1, 1);
            let lhs = geometric(b, minus, |b, k| Ok(b.kpow(k, -2) * b.apery_inv(k)?))?;
            (lhs, (b.h(&[1]) * b.q(2, 1)) * b.pp(-1))
        }
        27 => {
            let minus = b.q(-1, 1);
            let lhs = geometric(b, minus, |b, k| Ok(b.kpow(k, -3) * b.apery_inv(k)?))?;
            let rhs = b.h(&[2]) * b.pp(-1) + b.h(&[3]) * b.q(7, 3);
            (lhs, rhs)
        }
        n => unreachable!("check number {n} outside the registry"),
    })
}
