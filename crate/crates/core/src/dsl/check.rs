use std::ops::RangeInclusive;
use std::time::Instant;

use num_traits::ToPrimitive;
use rayon::prelude::*;

use super::ast::CongruenceStmt;
use super::eval::{eval_exact, Bindings, PadicDomain, Walker};
use crate::arith::{is_prime, max_digits, primes_in, ModContext, PadicNumber};
use crate::suite::{pool, CheckOptions, CongruenceReport, ParamValue, Params, Residue, Status};
use crate::{Error, Result};

/// Report id of unlabeled statements.
pub const DEFAULT_ID: &str = "stmt";

impl CongruenceStmt {
    pub fn id(&self) -> &str {
        self.label.as_deref().unwrap_or(DEFAULT_ID)
    }

    /// Parameter sets of every instance at `p`: the label parameters
    /// followed by each point of the `with` ranges, innermost varying
    /// fastest.
    pub fn instances(&self, p: u64) -> Result<Vec<Params>> {
        let mut out = vec![self.params.clone()];
        for b in &self.bindings {
            let mut next = Vec::new();
            for params in &out {
                let env = env_of(p, params);
                let bound = |e| -> Result<i64> {
                    let v = eval_exact(e, &env)?;
                    match v.is_integer().then(|| v.to_integer().to_i64()).flatten() {
                        Some(n) => Ok(n),
                        None => Err(Error::Eval(format!(
                            "range bound `{e}` is not a machine integer"
                        ))),
                    }
                };
                let (lo, hi) = (bound(&b.lo)?, bound(&b.hi)?);
                if hi.saturating_sub(lo) > 100_000 {
                    return Err(Error::Eval(format!(
                        "range {lo}..{hi} of `{}` is too large",
                        b.name
                    )));
                }
                for v in lo..=hi {
                    let mut params = params.clone();
                    params.set(&b.name, ParamValue::Int(v));
                    next.push(params);
                }
            }
            out = next;
        }
        Ok(out)
    }
}

fn env_of(p: u64, params: &Params) -> Bindings {
    let mut env: Bindings = params
        .iter()
        .filter_map(|(n, v)| match v {
            ParamValue::Int(i) => Some((n.to_string(), *i)),
            ParamValue::Tag(_) => None,
        })
        .collect();
    env.insert("p".into(), p as i64);
    env
}

/// Evaluates both sides at working precision `w`.
fn sides(
    stmt: &CongruenceStmt,
    p: u64,
    w: u32,
    env: &Bindings,
) -> Result<(PadicNumber, PadicNumber)> {
    let ctx = ModContext::new(p, w)?;
    let mut walker = Walker::new(PadicDomain::new(&ctx), env);
    let l = walker.eval(&stmt.lhs)?;
    let r = walker.eval(&stmt.rhs)?;
    Ok((walker.domain.finish(l), walker.domain.finish(r)))
}

type Outcome = (Status, Option<Residue>, Option<Residue>);

/// Raises the working precision until both sides are known modulo `p^t`.
fn decide(stmt: &CongruenceStmt, p: u64, mut w: u32, env: &Bindings) -> Result<(Outcome, u32)> {
    let t = stmt.t as i64;
    let cap = max_digits(p) - 1;
    while w <= cap {
        let step = match sides(stmt, p, w, env) {
            Ok((l, r)) => match (
                l.congruent(&r, t),
                Residue::of_padic(&l, t),
                Residue::of_padic(&r, t),
            ) {
                (Ok(same), Some(a), Some(b)) => {
                    let status = if same { Status::Pass } else { Status::Fail };
                    return Ok(((status, Some(a), Some(b)), w));
                }
                _ => {
                    let known = [l, r]
                        .iter()
                        .filter_map(PadicNumber::absolute_precision)
                        .min()
                        .unwrap_or(t);
                    (t - known).max(2) as u32
                }
            },
            Err(e) if e.is_precision() => 2,
            Err(e) => return Err(e),
        };
        w += step;
    }
    Ok(((Status::InsufficientPrecision, None, None), w))
}

/// Checks one instance of `stmt` at `p`. `params` must bind every free
/// parameter; see [`CongruenceStmt::instances`].
pub fn check_instance(
    stmt: &CongruenceStmt,
    p: u64,
    params: &Params,
    options: CheckOptions,
) -> Result<CongruenceReport> {
    let start = Instant::now();
    if p != 2 && !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let mut report = CongruenceReport {
        id: stmt.id().to_string(),
        p,
        params: params.clone(),
        t: stmt.t,
        lhs: None,
        rhs: None,
        status: Status::NotApplicable,
        ms: 0,
    };
    if p == 2 {
        return Ok(report);
    }
    let env = env_of(p, params);
    for c in &stmt.conditions {
        let (l, r) = (eval_exact(&c.lhs, &env)?, eval_exact(&c.rhs, &env)?);
        if !c.op.holds(&l, &r) {
            return Ok(report);
        }
    }
    let w = stmt.t + 2 + options.extra_precision;
    let ((mut status, mut lhs, mut rhs), w) = decide(stmt, p, w, &env)?;
    if status == Status::Fail && options.recheck_failures {
        ((status, lhs, rhs), _) = decide(stmt, p, w + 2, &env)?;
    }
    report.status = status;
    report.lhs = lhs;
    report.rhs = rhs;
    if options.timings {
        report.ms = start.elapsed().as_millis() as u64;
    }
    Ok(report)
}

/// Checks every instance of `stmt` at `p`.
pub fn check_stmt(stmt: &CongruenceStmt, p: u64) -> Result<Vec<CongruenceReport>> {
    check_stmt_with(stmt, p, CheckOptions::default())
}

pub fn check_stmt_with(
    stmt: &CongruenceStmt,
    p: u64,
    options: CheckOptions,
) -> Result<Vec<CongruenceReport>> {
    if p != 2 && !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    stmt.instances(p)?
        .iter()
        .map(|params| check_instance(stmt, p, params, options))
        .collect()
}

/// Checks every statement at every prime of `primes` on `jobs` workers.
/// Rows are sorted by `(id, p, params)`; rows sharing a key keep statement
/// order.
pub fn sweep_stmts(
    stmts: &[CongruenceStmt],
    primes: RangeInclusive<u64>,
    jobs: usize,
    options: CheckOptions,
) -> Result<Vec<CongruenceReport>> {
    let primes = primes_in(*primes.start(), *primes.end());
    let per_prime: Vec<Result<Vec<CongruenceReport>>> = pool(jobs)?.install(|| {
        primes
            .par_iter()
            .map(|&p| {
                let mut rows = Vec::new();
                for s in stmts {
                    rows.extend(check_stmt_with(s, p, options)?);
                }
                Ok(rows)
            })
            .collect()
    });
    let mut rows = Vec::new();
    for r in per_prime {
        rows.extend(r?);
    }
    rows.sort_by(|a, b| a.key().cmp(&b.key()));
    Ok(rows)
}
