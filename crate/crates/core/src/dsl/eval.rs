use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ast::{BinOp, Expr, Func};
use crate::arith::{
    bigint_mod_u128, binomial, catalan_exact, fermat_quotient, fib_pair, fib_pair_exact, is_prime,
    legendre_symbol, lucas_uv_exact, lucas_uv_mod, ModContext, PadicNumber, Rational,
};
use crate::bernoulli::{bernoulli_exact, bernoulli_padic};
use crate::harmonic::{h_exact, Composition, HarmonicCache};
use crate::{Error, Result};

/// Integer values of free variables.
pub type Bindings = BTreeMap<String, i64>;

/// Largest number of terms a single `sum` may have.
const MAX_TERMS: i64 = 10_000_000;
/// Integer powers above this many bits leave exact integer arithmetic.
const MAX_EXACT_BITS: u64 = 1 << 16;

fn eval_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Eval(msg.into()))
}

fn small<T: TryFrom<i64>>(n: &BigInt, what: &str) -> Result<T> {
    n.to_i64()
        .and_then(|v| T::try_from(v).ok())
        .ok_or_else(|| Error::Eval(format!("{what} {n} is out of range")))
}

/// Arithmetic backing the tree walk.
pub(crate) trait Domain {
    type V: Clone;

    fn lift(&self, n: BigInt) -> Self::V;
    /// The value as an exact integer, when it is one.
    fn as_int(&self, v: &Self::V) -> Option<BigInt>;
    fn add(&self, a: Self::V, b: Self::V) -> Self::V;
    fn sub(&self, a: Self::V, b: Self::V) -> Self::V;
    fn mul(&self, a: Self::V, b: Self::V) -> Self::V;
    fn div(&self, a: Self::V, b: Self::V) -> Result<Self::V>;
    fn neg(&self, a: Self::V) -> Self::V;
    fn pow(&self, a: Self::V, e: i64) -> Result<Self::V>;
    fn harmonic(&mut self, parts: &[u32], n: u64) -> Result<Self::V>;
    fn bernoulli(&mut self, m: u64) -> Result<Self::V>;
    fn lucas(&mut self, n: u64, x: &BigInt) -> Result<(Self::V, Self::V)>;
    fn fib(&mut self, n: u64) -> Result<(Self::V, Self::V)>;
    fn fermat(&mut self, a: i64, p: Option<u64>) -> Result<Self::V>;
}

pub(crate) struct Walker<D> {
    pub domain: D,
    scope: Vec<(String, BigInt)>,
}

impl<D: Domain> Walker<D> {
    pub fn new(domain: D, bindings: &Bindings) -> Self {
        Walker {
            domain,
            scope: bindings
                .iter()
                .map(|(k, v)| (k.clone(), BigInt::from(*v)))
                .collect(),
        }
    }

    pub fn bind(&mut self, name: &str, v: i64) {
        self.scope.push((name.to_string(), BigInt::from(v)));
    }

    fn lookup(&self, name: &str) -> Result<BigInt> {
        self.scope
            .iter()
            .rev()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| Error::Eval(format!("unbound variable `{name}`")))
    }

    fn int(&mut self, e: &Expr, what: &str) -> Result<BigInt> {
        let v = self.eval(e)?;
        self.domain
            .as_int(&v)
            .ok_or_else(|| Error::Eval(format!("{what} `{e}` is not an integer")))
    }

    pub fn eval(&mut self, e: &Expr) -> Result<D::V> {
        let d = &self.domain;
        Ok(match e {
            Expr::Int(n) => d.lift(n.clone()),
            Expr::Var(name) => {
                let v = self.lookup(name)?;
                self.domain.lift(v)
            }
            Expr::Neg(x) => {
                let v = self.eval(x)?;
                self.domain.neg(v)
            }
            Expr::Binary { op, lhs, rhs } => {
                let a = self.eval(lhs)?;
                let b = self.eval(rhs)?;
                let d = &self.domain;
                match op {
                    BinOp::Add => d.add(a, b),
                    BinOp::Sub => d.sub(a, b),
                    BinOp::Mul => d.mul(a, b),
                    BinOp::Div => d.div(a, b)?,
                }
            }
            Expr::Pow { base, exp } => {
                let b = self.eval(base)?;
                let e = self.int(exp, "exponent")?;
                self.domain.pow(b, small(&e, "exponent")?)?
            }
            Expr::Call { func, args } => self.call(*func, args)?,
            Expr::Harmonic { parts, upper } => {
                let mut ps = Vec::with_capacity(parts.len());
                for part in parts {
                    let a = self.int(part, "harmonic exponent")?;
                    match a.to_u32().filter(|&a| a >= 1) {
                        Some(a) => ps.push(a),
                        None => {
                            return eval_err(format!(
                                "harmonic exponent {a} must be a positive integer"
                            ))
                        }
                    }
                }
                let n = self.int(upper, "harmonic upper limit")?;
                let n: u64 = small(&n, "harmonic upper limit")?;
                self.domain.harmonic(&ps, n)?
            }
            Expr::Sum { var, lo, hi, body } => {
                let lo: i64 = small(&self.int(lo, "summation bound")?, "summation bound")?;
                let hi: i64 = small(&self.int(hi, "summation bound")?, "summation bound")?;
                if hi.saturating_sub(lo) > MAX_TERMS {
                    return eval_err(format!("sum over {lo}..{hi} has too many terms"));
                }
                let mut acc = self.domain.lift(BigInt::zero());
                for k in lo..=hi {
                    self.bind(var, k);
                    let term = self.eval(body);
                    self.scope.pop();
                    acc = self.domain.add(acc, term?);
                }
                acc
            }
        })
    }

    fn call(&mut self, func: Func, args: &[Expr]) -> Result<D::V> {
        let ints = |w: &mut Self| -> Result<Vec<BigInt>> {
            args.iter().map(|a| w.int(a, func.name())).collect()
        };
        match func {
            Func::Binom => {
                let a = ints(self)?;
                let n = binomial(
                    small(&a[0], "binom argument")?,
                    small(&a[1], "binom argument")?,
                )?;
                Ok(self.domain.lift(n))
            }
            Func::Legendre => {
                let a = ints(self)?;
                let q: u64 = small(&a[1], "leg modulus")?;
                if q == 2 || !is_prime(q) {
                    return eval_err(format!("leg needs an odd prime modulus, got {q}"));
                }
                let r = bigint_mod_u128(&a[0], q as u128) as i128;
                Ok(self.domain.lift(BigInt::from(legendre_symbol(r, q))))
            }
            Func::Catalan => {
                let a = ints(self)?;
                let k: i64 = small(&a[0], "catalan argument")?;
                if k < 0 {
                    return eval_err("catalan needs k >= 0");
                }
                Ok(self.domain.lift(catalan_exact(k)?.to_integer()))
            }
            Func::Fact => {
                let a = ints(self)?;
                let n: i64 = small(&a[0], "fact argument")?;
                if !(0..=100_000).contains(&n) {
                    return eval_err(format!("fact({n}) is out of range"));
                }
                let f = (1..=n).fold(BigInt::one(), |acc, i| acc * i);
                Ok(self.domain.lift(f))
            }
            Func::Bernoulli => {
                let a = ints(self)?;
                let m: u64 = small(&a[0], "Bernoulli index")?;
                self.domain.bernoulli(m)
            }
            Func::LucasU | Func::LucasV => {
                let a = ints(self)?;
                let n: u64 = small(&a[0], "Lucas index")?;
                let (u, v) = self.domain.lucas(n, &a[1])?;
                Ok(if func == Func::LucasU { u } else { v })
            }
            Func::Fib | Func::Luc => {
                let a = ints(self)?;
                let n: u64 = small(&a[0], "Fibonacci index")?;
                let (f, l) = self.domain.fib(n)?;
                Ok(if func == Func::Fib { f } else { l })
            }
            Func::FermatQuotient => {
                let a = ints(self)?;
                let base: i64 = small(&a[0], "Fermat quotient base")?;
                let p = self.lookup("p").ok().and_then(|p| p.to_u64());
                self.domain.fermat(base, p)
            }
        }
    }
}

/// An exact integer, or a p-adic number once exactness is lost.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Value {
    Int(BigInt),
    Padic(PadicNumber),
}

/// Evaluation modulo `p^W` for the context's `W`.
pub(crate) struct PadicDomain<'c> {
    ctx: &'c ModContext,
    harmonic: HashMap<u64, HarmonicCache>,
    bernoulli: HashMap<u64, PadicNumber>,
}

impl<'c> PadicDomain<'c> {
    pub fn new(ctx: &'c ModContext) -> Self {
        PadicDomain {
            ctx,
            harmonic: HashMap::new(),
            bernoulli: HashMap::new(),
        }
    }

    fn padic(&self, v: Value) -> PadicNumber {
        match v {
            Value::Int(n) => PadicNumber::from_bigint(self.ctx.p(), &n, self.ctx.k()),
            Value::Padic(x) => x,
        }
    }

    pub fn finish(&self, v: Value) -> PadicNumber {
        self.padic(v)
    }

    fn residue(&self, r: u128) -> Value {
        Value::Padic(PadicNumber::from_residue(self.ctx.p(), r, self.ctx.k()))
    }

    fn lift(
        &self,
        a: Value,
        b: Value,
        exact: impl Fn(BigInt, BigInt) -> BigInt,
        f: impl Fn(PadicNumber, PadicNumber) -> PadicNumber,
    ) -> Value {
        match (a, b) {
            (Value::Int(x), Value::Int(y)) => Value::Int(exact(x, y)),
            (a, b) => Value::Padic(f(self.padic(a), self.padic(b))),
        }
    }
}

impl Domain for PadicDomain<'_> {
    type V = Value;

    fn lift(&self, n: BigInt) -> Value {
        Value::Int(n)
    }

    fn as_int(&self, v: &Value) -> Option<BigInt> {
        match v {
            Value::Int(n) => Some(n.clone()),
            Value::Padic(_) => None,
        }
    }

    fn add(&self, a: Value, b: Value) -> Value {
        self.lift(a, b, |x, y| x + y, |x, y| x + y)
    }

    fn sub(&self, a: Value, b: Value) -> Value {
        self.lift(a, b, |x, y| x - y, |x, y| x - y)
    }

    fn mul(&self, a: Value, b: Value) -> Value {
        self.lift(a, b, |x, y| x * y, |x, y| x * y)
    }

    fn div(&self, a: Value, b: Value) -> Result<Value> {
        if let (Value::Int(x), Value::Int(y)) = (&a, &b) {
            if y.is_zero() {
                return Err(Error::DivisionByZero);
            }
            if x.is_multiple_of(y) {
                return Ok(Value::Int(x / y));
            }
        }
        let (x, y) = (self.padic(a), self.padic(b));
        Ok(Value::Padic(x * y.inv()?))
    }

    fn neg(&self, a: Value) -> Value {
        match a {
            Value::Int(n) => Value::Int(-n),
            Value::Padic(x) => Value::Padic(-x),
        }
    }

    fn pow(&self, a: Value, e: i64) -> Result<Value> {
        if let Value::Int(n) = &a {
            if e >= 0 && n.bits().saturating_mul(e as u64) <= MAX_EXACT_BITS {
                return Ok(Value::Int(n.pow(e as u32)));
            }
            if e < 0 && n.abs().is_one() {
                return Ok(Value::Int(if e % 2 == 0 {
                    BigInt::one()
                } else {
                    n.clone()
                }));
            }
        }
        Ok(Value::Padic(self.padic(a).pow(e)?))
    }

    fn harmonic(&mut self, parts: &[u32], n: u64) -> Result<Value> {
        let ctx = self.ctx;
        if n >= ctx.p() {
            return eval_err(format!("H upper limit {n} must be below p = {}", ctx.p()));
        }
        let cache = match self.harmonic.entry(n) {
            std::collections::hash_map::Entry::Occupied(e) => e.into_mut(),
            std::collections::hash_map::Entry::Vacant(v) => v.insert(HarmonicCache::new(ctx, n)?),
        };
        let r = cache.prefix(ctx, parts)[n as usize];
        Ok(self.residue(r))
    }

    fn bernoulli(&mut self, m: u64) -> Result<Value> {
        match m {
            0 => return Ok(Value::Int(BigInt::one())),
            1 => return self.div(Value::Int(BigInt::from(-1)), Value::Int(BigInt::from(2))),
            _ if m % 2 == 1 => return Ok(Value::Int(BigInt::zero())),
            _ => {}
        }
        if let Some(b) = self.bernoulli.get(&m) {
            return Ok(Value::Padic(*b));
        }
        let b = bernoulli_padic(m, self.ctx.p(), self.ctx.k())?;
        self.bernoulli.insert(m, b);
        Ok(Value::Padic(b))
    }

    fn lucas(&mut self, n: u64, x: &BigInt) -> Result<(Value, Value)> {
        let m = self.ctx.modulus();
        let xr = bigint_mod_u128(x, m) as i128;
        let (u, v) = lucas_uv_mod(n, xr, m);
        Ok((self.residue(u), self.residue(v)))
    }

    fn fib(&mut self, n: u64) -> Result<(Value, Value)> {
        let (f, l) = fib_pair(n, self.ctx);
        Ok((self.residue(f), self.residue(l)))
    }

    fn fermat(&mut self, a: i64, _p: Option<u64>) -> Result<Value> {
        Ok(Value::Padic(fermat_quotient(a, self.ctx)?))
    }
}

/// Exact rational evaluation.
pub(crate) struct ExactDomain;

fn rat(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

impl Domain for ExactDomain {
    type V = Rational;

    fn lift(&self, n: BigInt) -> Rational {
        rat(n)
    }

    fn as_int(&self, v: &Rational) -> Option<BigInt> {
        v.is_integer().then(|| v.to_integer())
    }

    fn add(&self, a: Rational, b: Rational) -> Rational {
        a + b
    }

    fn sub(&self, a: Rational, b: Rational) -> Rational {
        a - b
    }

    fn mul(&self, a: Rational, b: Rational) -> Rational {
        a * b
    }

    fn div(&self, a: Rational, b: Rational) -> Result<Rational> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(a / b)
    }

    fn neg(&self, a: Rational) -> Rational {
        -a
    }

    fn pow(&self, a: Rational, e: i64) -> Result<Rational> {
        if e < 0 && a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let e =
            i32::try_from(e).map_err(|_| Error::Eval(format!("exponent {e} is out of range")))?;
        Ok(a.pow(e))
    }

    fn harmonic(&mut self, parts: &[u32], n: u64) -> Result<Rational> {
        if n > 10_000 {
            return eval_err(format!("exact H with upper limit {n} is too large"));
        }
        Ok(h_exact(&Composition::new(parts.to_vec())?, n))
    }

    fn bernoulli(&mut self, m: u64) -> Result<Rational> {
        bernoulli_exact(m)
    }

    fn lucas(&mut self, n: u64, x: &BigInt) -> Result<(Rational, Rational)> {
        if n > 100_000 {
            return eval_err(format!("exact Lucas index {n} is too large"));
        }
        let (u, v) = lucas_uv_exact(n, x);
        Ok((rat(u), rat(v)))
    }

    fn fib(&mut self, n: u64) -> Result<(Rational, Rational)> {
        if n > 100_000 {
            return eval_err(format!("exact Fibonacci index {n} is too large"));
        }
        let (f, l) = fib_pair_exact(n);
        Ok((rat(f), rat(l)))
    }

    fn fermat(&mut self, a: i64, p: Option<u64>) -> Result<Rational> {
        let Some(p) = p.filter(|&p| p > 2 && is_prime(p)) else {
            return eval_err("q(a) needs p bound to an odd prime");
        };
        if a.rem_euclid(p as i64) == 0 {
            return Err(Error::NotInvertible(a.to_string()));
        }
        let power = BigInt::from(a).pow(p as u32 - 1);
        Ok(Rational::new(power - 1, BigInt::from(p)))
    }
}

/// Evaluates `e` modulo `p^K` for the context's prime and precision; `p` is
/// bound automatically.
pub fn eval(e: &Expr, ctx: &ModContext, bindings: &Bindings) -> Result<PadicNumber> {
    let mut walker = Walker::new(PadicDomain::new(ctx), bindings);
    walker.bind("p", ctx.p() as i64);
    let v = walker.eval(e)?;
    Ok(walker.domain.finish(v))
}

/// Exact evaluation; `p` must be among the bindings if the expression uses it.
pub fn eval_exact(e: &Expr, bindings: &Bindings) -> Result<Rational> {
    Walker::new(ExactDomain, bindings).eval(e)
}
