use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::arith::{
    binomial, fermat_quotient, fib_pair, fib_pair_exact, lucas_uv, lucas_uv_exact, ModContext,
    PadicNumber, Rational,
};
use crate::bernoulli::{bernoulli_exact, bernoulli_padic};
use crate::harmonic::{h_exact, Composition, HarmonicCache};
use crate::{Error, Result};

/// The numeric world an evaluation plan runs in.
pub(crate) trait Backend {
    type V: Clone
        + Add<Output = Self::V>
        + Sub<Output = Self::V>
        + Mul<Output = Self::V>
        + Neg<Output = Self::V>;

    fn p(&self) -> u64;
    fn zero(&self) -> Self::V;
    /// The rational constant `n/d`.
    fn q(&self, n: i64, d: i64) -> Self::V;
    /// `p^e`.
    fn pp(&self, e: i64) -> Self::V;
    fn pow(&self, x: &Self::V, e: i64) -> Result<Self::V>;
    /// `k^e` for `1 ≤ k < p`.
    fn kpow(&self, k: u64, e: i64) -> Self::V;
    /// `H(parts; p-1)`.
    fn h(&mut self, parts: &[u32]) -> Self::V;
    /// `H(parts; (p-1)/2)`.
    fn h_half(&mut self, parts: &[u32]) -> Self::V;
    /// `C(2k,k)^e` for `e = ±1`.
    fn central(&mut self, k: u64, e: i64) -> Result<Self::V>;
    /// `(C(p-1+k,k) C(p-1,k))^-1`.
    fn apery_inv(&mut self, k: u64) -> Result<Self::V>;
    fn lucas(&mut self, n: u64, x: i64) -> (Self::V, Self::V);
    /// `(F_n, L_n)`.
    fn fib(&mut self, n: u64) -> (Self::V, Self::V);
    fn fermat(&mut self, a: i64) -> Result<Self::V>;
    /// `B_m`, accurate enough to be multiplied by `p^weight`.
    fn bernoulli(&mut self, m: u64, weight: u32) -> Result<Self::V>;
}

/// Modular evaluation at a fixed working precision `W`.
pub(crate) struct FastBackend {
    p: u64,
    w: u32,
    ctx: ModContext,
    full: HarmonicCache,
    half: HarmonicCache,
    central: Vec<PadicNumber>,
    central_inv: Vec<PadicNumber>,
    apery_inv: Vec<PadicNumber>,
    bernoulli: HashMap<(u64, u32), PadicNumber>,
}

impl FastBackend {
    pub(crate) fn new(p: u64, w: u32) -> Result<Self> {
        let ctx = ModContext::new(p, w)?;
        let full = HarmonicCache::new(&ctx, p - 1)?;
        let half = HarmonicCache::new(&ctx, (p - 1) / 2)?;
        Ok(FastBackend {
            p,
            w,
            ctx,
            full,
            half,
            central: Vec::new(),
            central_inv: Vec::new(),
            apery_inv: Vec::new(),
            bernoulli: HashMap::new(),
        })
    }

    fn int(&self, n: i128) -> PadicNumber {
        PadicNumber::from_i128(self.p, n, self.w)
    }

    fn residue(&self, r: u128) -> PadicNumber {
        PadicNumber::from_residue(self.p, r, self.w)
    }

    fn fill_central(&mut self) -> Result<()> {
        if !self.central.is_empty() {
            return Ok(());
        }
        let mut c = self.int(1);
        self.central.push(c);
        self.central_inv.push(c);
        for k in 1..self.p {
            let step = self.int(2 * (2 * k as i128 - 1)) * self.residue(self.ctx.inv(k));
            c = c * step;
            self.central.push(c);
            self.central_inv.push(c.inv()?);
        }
        Ok(())
    }

    fn fill_apery(&mut self) -> Result<()> {
        if !self.apery_inv.is_empty() {
            return Ok(());
        }
        let p = self.p as i128;
        let mut d = self.int(1);
        self.apery_inv.push(d);
        for k in 1..self.p {
            let kk = k as i128;
            // C(p-1+k,k) C(p-1,k) grows by (p-1+k)(p-k)/k^2
            let step =
                self.int((p - 1 + kk) * (p - kk)) * self.residue(self.ctx.pow(self.ctx.inv(k), 2));
            d = d * step;
            self.apery_inv.push(d.inv()?);
        }
        Ok(())
    }
}

impl Backend for FastBackend {
    type V = PadicNumber;

    fn p(&self) -> u64 {
        self.p
    }

    fn zero(&self) -> PadicNumber {
        PadicNumber::zero(self.p)
    }

    fn q(&self, n: i64, d: i64) -> PadicNumber {
        let num = self.int(n as i128);
        num * self
            .int(d as i128)
            .inv()
            .expect("nonzero constant denominator")
    }

    fn pp(&self, e: i64) -> PadicNumber {
        PadicNumber::exact_int(self.p, 1).shift(e)
    }

    fn pow(&self, x: &PadicNumber, e: i64) -> Result<PadicNumber> {
        x.pow(e)
    }

    fn kpow(&self, k: u64, e: i64) -> PadicNumber {
        let base = if e < 0 { self.ctx.inv(k) } else { k as u128 };
        self.residue(self.ctx.pow(base, e.unsigned_abs()))
    }

    fn h(&mut self, parts: &[u32]) -> PadicNumber {
        let n = self.p as usize - 1;
        let r = self.full.prefix(&self.ctx, parts)[n];
        self.residue(r)
    }

    fn h_half(&mut self, parts: &[u32]) -> PadicNumber {
        let n = (self.p as usize - 1) / 2;
        let r = self.half.prefix(&self.ctx, parts)[n];
        self.residue(r)
    }

    fn central(&mut self, k: u64, e: i64) -> Result<PadicNumber> {
        self.fill_central()?;
        Ok(if e < 0 {
            self.central_inv[k as usize]
        } else {
            self.central[k as usize]
        })
    }

    fn apery_inv(&mut self, k: u64) -> Result<PadicNumber> {
        self.fill_apery()?;
        Ok(self.apery_inv[k as usize])
    }

    fn lucas(&mut self, n: u64, x: i64) -> (PadicNumber, PadicNumber) {
        let (u, v) = lucas_uv(n, x as i128, &self.ctx);
        (self.residue(u), self.residue(v))
    }

    fn fib(&mut self, n: u64) -> (PadicNumber, PadicNumber) {
        let (f, l) = fib_pair(n, &self.ctx);
        (self.residue(f), self.residue(l))
    }

    fn fermat(&mut self, a: i64) -> Result<PadicNumber> {
        fermat_quotient(a, &self.ctx)
    }

    fn bernoulli(&mut self, m: u64, weight: u32) -> Result<PadicNumber> {
        let digits = self.w.saturating_sub(weight).max(1);
        if let Some(b) = self.bernoulli.get(&(m, digits)) {
            return Ok(*b);
        }
        let b = bernoulli_padic(m, self.p, digits)?;
        self.bernoulli.insert((m, digits), b);
        Ok(b)
    }
}

/// Exact rational evaluation, the oracle for [`FastBackend`].
pub(crate) struct ExactBackend {
    p: u64,
    central: Vec<Rational>,
}

impl ExactBackend {
    pub(crate) fn new(p: u64) -> Self {
        ExactBackend {
            p,
            central: Vec::new(),
        }
    }

    fn harmonic(parts: &[u32], n: u64) -> Rational {
        let c = Composition::new(parts.to_vec()).expect("registry compositions are valid");
        h_exact(&c, n)
    }
}

fn big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

impl Backend for ExactBackend {
    type V = Rational;

    fn p(&self) -> u64 {
        self.p
    }

    fn zero(&self) -> Rational {
        Rational::zero()
    }

    fn q(&self, n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn pp(&self, e: i64) -> Rational {
        big(BigInt::from(self.p)).pow(e as i32)
    }

    fn pow(&self, x: &Rational, e: i64) -> Result<Rational> {
        if e < 0 && x.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(x.pow(e as i32))
    }

    fn kpow(&self, k: u64, e: i64) -> Rational {
        big(BigInt::from(k)).pow(e as i32)
    }

    fn h(&mut self, parts: &[u32]) -> Rational {
        Self::harmonic(parts, self.p - 1)
    }

    fn h_half(&mut self, parts: &[u32]) -> Rational {
        Self::harmonic(parts, (self.p - 1) / 2)
    }

    fn central(&mut self, k: u64, e: i64) -> Result<Rational> {
        if self.central.is_empty() {
            self.central = (0..self.p as i64)
                .map(|j| binomial(2 * j, j).map(big))
                .collect::<Result<_>>()?;
        }
        let c = &self.central[k as usize];
        Ok(if e < 0 { c.recip() } else { c.clone() })
    }

    fn apery_inv(&mut self, k: u64) -> Result<Rational> {
        let (p, k) = (self.p as i64, k as i64);
        Ok(big(binomial(p - 1 + k, k)? * binomial(p - 1, k)?).recip())
    }

    fn lucas(&mut self, n: u64, x: i64) -> (Rational, Rational) {
        let (u, v) = lucas_uv_exact(n, &BigInt::from(x));
        (big(u), big(v))
    }

    fn fib(&mut self, n: u64) -> (Rational, Rational) {
        let (f, l) = fib_pair_exact(n);
        (big(f), big(l))
    }

    fn fermat(&mut self, a: i64) -> Result<Rational> {
        let p = self.p;
        if (a as i128).rem_euclid(p as i128) == 0 {
            return Err(Error::NotInvertible(a.to_string()));
        }
        let power = BigInt::from(a).pow(p as u32 - 1);
        Ok(Rational::new(power - BigInt::one(), BigInt::from(p)))
    }

    fn bernoulli(&mut self, m: u64, _weight: u32) -> Result<Rational> {
        bernoulli_exact(m)
    }
}
