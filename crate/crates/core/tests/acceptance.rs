//! End-to-end acceptance suite. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use padiclab::arith::{is_prime, mod_inverse_u128, primes_in, Rational};
use padiclab::bernoulli::{bernoulli_exact, bernoulli_mod, kummer_check};
use padiclab::dsl::{self, check_stmt};
use padiclab::harmonic::{h_exact, h_ones_exact};
use padiclab::identities::{
    apery_cubic, apery_quadratic, bb_ag, hernandez, l23_expansions, series_partial, t31_u_identity,
    t31_v_identity, t33_termwise, t42_product_congruence, IdentityResult, SeriesKind,
};
use padiclab::suite::{
    self, oracle_check, registry, sweep, write_jsonl, CheckId, CheckOptions, ParamGrid, Residue,
    SweepConfig,
};
use padiclab::{Composition, ModContext, Params, Status};

/// Outcome of one criterion: pass flag and a one-line summary.
type Verdict = (bool, String);

fn first<T: std::fmt::Display>(bad: &[T]) -> String {
    bad.first()
        .map_or_else(String::new, |b| format!(", first: {b}"))
}

fn failures(rows: impl IntoIterator<Item = IdentityResult>) -> (usize, Vec<String>) {
    let mut n = 0;
    let mut bad = Vec::new();
    for r in rows {
        n += 1;
        if !r.pass {
            bad.push(r.to_string());
        }
    }
    (n, bad)
}

fn identities() -> Verdict {
    let mut rows = Vec::new();
    for n in 1..=200 {
        rows.extend([hernandez(n), apery_quadratic(n), apery_cubic(n)]);
    }
    rows.extend((1..=25).map(bb_ag));
    for n in 1..=40 {
        for m in -5..=6 {
            rows.extend([t31_u_identity(n, m), t31_v_identity(n, m)]);
        }
    }
    for n in 2..=60 {
        for k in 1..n {
            rows.extend(l23_expansions(n, k).expect("1 <= k < n"));
        }
    }
    let (n, mut bad) = failures(rows);
    let mut newton = 0;
    for j in 1..=4 {
        for m in 0..=100 {
            newton += 1;
            let direct = h_exact(&Composition::new(vec![1; j]).unwrap(), m);
            if h_ones_exact(j, m).ok() != Some(direct) {
                bad.push(format!("h_ones j={j} n={m}"));
            }
        }
    }
    (
        bad.is_empty(),
        format!("{} rows, {} failing{}", n + newton, bad.len(), first(&bad)),
    )
}

fn full_sweep(options: CheckOptions, jobs: usize) -> Vec<padiclab::CongruenceReport> {
    let mut cfg = SweepConfig::new(CheckId::all().collect(), 2..=2000);
    cfg.options = options;
    cfg.jobs = jobs;
    sweep(&cfg).expect("sweep")
}

fn congruence_sweep(rows: &[padiclab::CongruenceReport]) -> Verdict {
    let bad: Vec<_> = rows.iter().filter(|r| !r.status.is_ok()).collect();
    let pass = rows.iter().filter(|r| r.status == Status::Pass).count();
    let ids: std::collections::BTreeSet<&str> = rows.iter().map(|r| r.id.as_str()).collect();
    (
        bad.is_empty() && ids.len() == 27,
        format!(
            "{} rows over p <= 2000, {pass} pass, {} bad{}",
            rows.len(),
            bad.len(),
            first(&bad)
        ),
    )
}

fn oracle_equivalence() -> Verdict {
    let grid = ParamGrid::default();
    let mut n = 0;
    let mut bad = Vec::new();
    for p in [7u64, 11, 13, 17, 19, 23] {
        for entry in registry() {
            for params in entry.grid(&grid) {
                n += 1;
                let fast = suite::check(entry.id, p, &params).expect("check");
                match oracle_check(entry.id, p, &params) {
                    Ok(slow) if slow.same_outcome(&fast) => {}
                    other => bad.push(format!("{fast} vs {other:?}")),
                }
            }
        }
    }
    (
        bad.is_empty(),
        format!("{n} rows compared, {} mismatches{}", bad.len(), first(&bad)),
    )
}

fn spot_values() -> Verdict {
    let mut bad = Vec::new();
    let unit = |u: u128| {
        Some(Residue {
            valuation: 0,
            unit: u,
        })
    };
    let mut spot = |id: u8, p: u64, params: Params, want: u128| {
        let r = suite::check(CheckId::new(id).unwrap(), p, &params).expect("check");
        if r.status != Status::Pass || r.lhs != unit(want) || r.rhs != unit(want) {
            bad.push(r.to_string());
        }
    };
    spot(17, 3, Params::new(), 5);
    spot(20, 5, Params::new(), 23);
    spot(15, 5, Params::new().with_int("m", 1), 24);
    let t33 = t33_termwise(5, 3).expect("t33");
    let forms = [Some(&t33.lhs), Some(&t33.rhs), t33.aux.as_ref()];
    if !t33.pass
        || forms.iter().any(|f| {
            f.map(|x| Residue::of_rational(x, 5, 1))
                != Some(Residue {
                    valuation: 0,
                    unit: 3,
                })
        })
    {
        bad.push(t33.to_string());
    }
    let h1 = h_exact(&Composition::new(vec![1]).unwrap(), 6);
    if h1 != Rational::new(49.into(), 20.into())
        || Residue::of_rational(&h1, 7, 2)
            != (Residue {
                valuation: 2,
                unit: 0,
            })
    {
        bad.push(format!("H(1; 6) = {h1}"));
    }
    (
        bad.is_empty(),
        format!("5 spot values, {} wrong{}", bad.len(), first(&bad)),
    )
}

/// `num/den mod p^k` by plain big-integer arithmetic.
fn reduce(r: &Rational, p: u64, k: u32) -> u128 {
    let m = (p as u128).pow(k);
    let mb = BigInt::from(m);
    let num = r.numer().mod_floor(&mb).to_u128().unwrap();
    let den = r.denom().mod_floor(&mb).to_u128().unwrap();
    let inv = mod_inverse_u128(den, m).expect("p-integral");
    (BigInt::from(num) * BigInt::from(inv))
        .mod_floor(&mb)
        .to_u128()
        .unwrap()
}

fn bernoulli_validation() -> Verdict {
    let mut n = 0;
    let mut bad = Vec::new();
    for p in primes_in(3, 61) {
        let usable = |m: u64| !m.is_multiple_of(p - 1);
        for k in 1..=3u32 {
            let ctx = ModContext::new(p, k).unwrap();
            for m in (2..=64u64).step_by(2).filter(|&m| usable(m)) {
                n += 1;
                let want = reduce(&bernoulli_exact(m).unwrap(), p, k);
                if bernoulli_mod(m, &ctx, k).ok() != Some(want) {
                    bad.push(format!("B({m}) mod {p}^{k}"));
                }
                for m2 in (m..=64)
                    .step_by(2)
                    .filter(|&m2| usable(m2) && (m2 - m) % (p - 1) == 0)
                {
                    n += 1;
                    if kummer_check(m, m2, &ctx).ok() != Some(true) {
                        bad.push(format!("kummer {m},{m2} at p={p}"));
                    }
                }
            }
        }
    }
    for p in [7u64, 11, 13] {
        for k in 1..p as i64 {
            n += 1;
            match t42_product_congruence(p, k) {
                Ok(r) if r.pass => {}
                other => bad.push(format!("t42 p={p} k={k}: {other:?}")),
            }
        }
    }
    (
        bad.is_empty(),
        format!("{n} rows, {} failing{}", bad.len(), first(&bad)),
    )
}

/// `ζ(3)` from a partial sum and an Euler-Maclaurin tail.
fn zeta3() -> f64 {
    let n = 1000.0f64;
    let head: f64 = (1..1000).map(|k| 1.0 / (k as f64).powi(3)).sum();
    head + 1.0 / (2.0 * n * n) + 1.0 / (2.0 * n.powi(3)) + 1.0 / (4.0 * n.powi(4))
        - 1.0 / (12.0 * n.powi(6))
}

fn series() -> Verdict {
    let golden = (1.0 + 5f64.sqrt()) / 2.0;
    let limits = [
        (SeriesKind::Zeta2Third, PI * PI / 18.0),
        (SeriesKind::AperyZeta3, -0.4 * zeta3()),
        (SeriesKind::GoldenLog, -2.0 / 5f64.sqrt() * golden.ln()),
    ];
    let mut worst = 0.0f64;
    for (kind, limit) in limits {
        worst = worst.max((series_partial(kind, 60) - limit).abs());
    }
    (
        worst <= 1e-12,
        format!("largest deviation at N=60: {worst:.3e}"),
    )
}

fn determinism(base: &[padiclab::CongruenceReport]) -> Verdict {
    let mut notes = Vec::new();
    let bytes = |rows: &[padiclab::CongruenceReport]| {
        let mut out = Vec::new();
        write_jsonl(&mut out, rows).unwrap();
        out
    };
    let serial = full_sweep(CheckOptions::default(), 1);
    let parallel = full_sweep(CheckOptions::default(), 4);
    let jobs_ok = bytes(&serial) == bytes(&parallel) && bytes(&serial) == bytes(base);
    notes.push(format!("jobs 1/4 identical: {jobs_ok}"));

    let raised = full_sweep(
        CheckOptions {
            extra_precision: 2,
            ..Default::default()
        },
        4,
    );
    let changed = base
        .iter()
        .zip(&raised)
        .filter(|(a, b)| a.key() != b.key() || a.status != b.status)
        .count();
    let precision_ok = changed == 0 && base.len() == raised.len();
    notes.push(format!("verdicts changed at +2 digits: {changed}"));

    let corpus = dsl::corpus().expect("corpus parses");
    let round_trip = corpus
        .iter()
        .all(|s| dsl::parse_stmt(&s.to_string()).ok().as_ref() == Some(s));
    let mut compared = 0;
    let mut mismatches = Vec::new();
    for s in &corpus {
        let id: CheckId = s.id().parse().expect("registry label");
        for p in (2..=100).filter(|&p| is_prime(p)) {
            for row in check_stmt(s, p).expect("statement") {
                compared += 1;
                let expected = suite::check(id, p, &row.params).expect("check");
                if !row.same_outcome(&expected) {
                    mismatches.push(format!("{row} vs {expected}"));
                }
            }
        }
    }
    let ids: std::collections::BTreeSet<&str> = corpus.iter().map(|s| s.id()).collect();
    let corpus_ok = round_trip && mismatches.is_empty() && ids.len() == 27;
    notes.push(format!(
        "corpus round-trip {round_trip}, {compared} rows vs registry, {} mismatches{}",
        mismatches.len(),
        first(&mismatches)
    ));
    (jobs_ok && precision_ok && corpus_ok, notes.join("; "))
}

fn main() -> ExitCode {
    let mut all = true;
    let mut report = |n: u32, name: &str, f: &mut dyn FnMut() -> Verdict| {
        let start = Instant::now();
        let (ok, detail) = f();
        all &= ok;
        let tag = if ok { "PASS" } else { "FAIL" };
        println!(
            "{tag} criterion {n} {name}: {detail} ({:.1}s)",
            start.elapsed().as_secs_f64()
        );
    };
    report(1, "identities", &mut identities);
    let mut base = Vec::new();
    report(2, "congruence sweep", &mut || {
        base = full_sweep(CheckOptions::default(), rayon::current_num_threads());
        congruence_sweep(&base)
    });
    report(3, "oracle equivalence", &mut oracle_equivalence);
    report(4, "spot values", &mut spot_values);
    report(5, "bernoulli", &mut bernoulli_validation);
    report(6, "series", &mut series);
    report(7, "determinism", &mut || determinism(&base));
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
