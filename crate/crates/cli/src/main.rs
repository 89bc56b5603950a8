//! `padiclab` command-line front end.
//!
//! Exit codes: 0 when every row passes or is not applicable, 1 when any row
//! fails (or lacks precision), 2 on usage and configuration errors.

mod config;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{parse_checks, parse_range, Format, GridArgs, RunArgs, RunConfig, Usage, UsageError};
use padiclab::dsl::{self, Bindings};
use padiclab::harmonic::{h_exact, h_ones_exact};
use padiclab::identities::{self as ids, IdentityResult, SeriesKind};
use padiclab::suite::{registry, sweep, write_csv, write_jsonl, SweepConfig};
use padiclab::{Composition, CongruenceReport, Error, ModContext, Status};

#[derive(Parser)]
#[command(
    name = "padiclab",
    version,
    about = "Prime-power congruences for reciprocal central binomial sums"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sweep registry checks over a prime range.
    Verify(VerifyArgs),
    /// Verify exact finite identities.
    Identity(IdentityArgs),
    /// Evaluate an expression modulo p^K.
    Eval(EvalArgs),
    /// Check statement files.
    Stmt(StmtArgs),
    /// Print a timing table of registry checks.
    Bench(BenchArgs),
    /// List the registry.
    List,
}

#[derive(Args)]
struct VerifyArgs {
    /// `all` or a comma-separated list such as `C01,C17`.
    #[arg(long)]
    checks: Option<String>,
    #[command(flatten)]
    run: RunArgs,
    #[command(flatten)]
    grid: GridArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum IdentityName {
    Hernandez,
    AperyQuadratic,
    AperyCubic,
    BbAg,
    #[value(name = "t31_u")]
    T31U,
    #[value(name = "t31_v")]
    T31V,
    L23,
    HOnes,
    T33,
    T42,
    Series,
}

#[derive(Args)]
struct IdentityArgs {
    #[arg(long, value_enum)]
    name: IdentityName,
    /// Range of n (also the number of terms for `series`).
    #[arg(long, default_value = "1..50")]
    n: String,
    /// Range of m for t31_u and t31_v.
    #[arg(long, default_value = "-5..6", allow_hyphen_values = true)]
    m: String,
    /// Prime range for t33 and t42.
    #[arg(long, default_value = "7..13")]
    primes: String,
    /// Depth range for h_ones.
    #[arg(long, default_value = "1..4")]
    j: String,
    /// Print failing rows only.
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    prime: u64,
    /// Digits of p-adic precision.
    #[arg(long, default_value_t = 4)]
    precision: u32,
    #[arg(long)]
    expr: String,
    /// Variable binding `name=value`; repeatable.
    #[arg(long = "bind", value_name = "NAME=VALUE")]
    bindings: Vec<String>,
}

#[derive(Args)]
struct StmtArgs {
    /// Statement files, one statement per line.
    files: Vec<PathBuf>,
    /// Also check the bundled corpus.
    #[arg(long)]
    corpus: bool,
    #[command(flatten)]
    run: RunArgs,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    checks: Option<String>,
    #[arg(long, default_value = "3..500")]
    primes: String,
    #[arg(long)]
    jobs: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(a) => verify(a),
        Command::Identity(a) => identity(a),
        Command::Eval(a) => eval(a),
        Command::Stmt(a) => stmt(a),
        Command::Bench(a) => bench(a),
        Command::List => list(),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(UsageError(msg)) if msg.is_empty() => ExitCode::SUCCESS,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn output(out: Option<&PathBuf>) -> Usage<Box<dyn Write>> {
    Ok(match out {
        Some(path) => {
            let f =
                File::create(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
            Box::new(BufWriter::new(f))
        }
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Writes the report, prints a summary to stderr and returns whether every
/// row passed or was not applicable.
fn emit(rows: &[CongruenceReport], cfg: &RunConfig) -> Usage<bool> {
    let mut out = output(cfg.out.as_ref())?;
    match cfg.format {
        Format::Json => write_jsonl(&mut out, rows)?,
        Format::Csv => write_csv(&mut out, rows)?,
    }
    out.flush()?;
    let count = |s: Status| rows.iter().filter(|r| r.status == s).count();
    eprintln!(
        "{} rows: {} pass, {} not-applicable, {} fail, {} insufficient-precision",
        rows.len(),
        count(Status::Pass),
        count(Status::NotApplicable),
        count(Status::Fail),
        count(Status::InsufficientPrecision)
    );
    for r in rows.iter().filter(|r| !r.status.is_ok()).take(10) {
        eprintln!("  {r}");
    }
    Ok(rows.iter().all(|r| r.status.is_ok()))
}

fn verify(a: VerifyArgs) -> Usage<bool> {
    let cfg = RunConfig::resolve(&a.run, a.checks.as_deref(), &a.grid)?;
    let rows = sweep(&SweepConfig {
        ids: cfg.checks.clone(),
        primes: cfg.primes.clone(),
        grid: cfg.grid.clone(),
        jobs: cfg.jobs,
        options: cfg.options,
    })?;
    emit(&rows, &cfg)
}

fn stmt(a: StmtArgs) -> Usage<bool> {
    let cfg = RunConfig::resolve(&a.run, None, &GridArgs::default())?;
    let mut stmts = Vec::new();
    if a.corpus {
        stmts.extend(dsl::corpus()?);
    }
    for path in &a.files {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
        stmts.extend(
            dsl::parse_file(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))?,
        );
    }
    if stmts.is_empty() {
        return Err(UsageError(
            "no statements given; pass files or --corpus".into(),
        ));
    }
    let rows = dsl::sweep_stmts(&stmts, cfg.primes.clone(), cfg.jobs, cfg.options)?;
    emit(&rows, &cfg)
}

fn eval(a: EvalArgs) -> Usage<bool> {
    let expr = dsl::parse_expr(&a.expr)?;
    let mut bindings = Bindings::new();
    for b in &a.bindings {
        let (name, value) = b
            .split_once('=')
            .ok_or_else(|| UsageError(format!("bad binding `{b}`, expected name=value")))?;
        let value = value
            .trim()
            .parse()
            .map_err(|_| UsageError(format!("bad binding `{b}`")))?;
        bindings.insert(name.trim().to_string(), value);
    }
    if a.prime == 2 || !padiclab::arith::is_prime(a.prime) {
        return Err(UsageError(Error::NotOddPrime(a.prime).to_string()));
    }
    let ctx = ModContext::new(a.prime, a.precision)?;
    let value = match dsl::eval(&expr, &ctx, &bindings) {
        Ok(v) => v,
        Err(e) if e.is_precision() => {
            eprintln!("error: {e}");
            return Ok(false);
        }
        Err(e) => return Err(e.into()),
    };
    let k = a.precision as i64;
    match value.residue_at(k) {
        Ok((v, u)) => {
            println!("valuation={v} unit={u} mod {}^{}", a.prime, a.precision);
            Ok(true)
        }
        Err(e) => {
            println!("{value}");
            eprintln!("error: {e}");
            Ok(false)
        }
    }
}

fn identity_row(r: IdentityResult) -> (bool, String) {
    (r.pass, r.to_string())
}

fn identity(a: IdentityArgs) -> Usage<bool> {
    let n = parse_range::<i64>(&a.n)?;
    let m = parse_range::<i64>(&a.m)?;
    let mut rows: Vec<(bool, String)> = Vec::new();
    let need_positive = |lo: i64| -> Usage<()> {
        if lo < 1 {
            Err(UsageError("n must start at 1 or above".into()))
        } else {
            Ok(())
        }
    };
    match a.name {
        IdentityName::Hernandez => {
            need_positive(*n.start())?;
            rows.extend(n.map(|n| identity_row(ids::hernandez(n))));
        }
        IdentityName::AperyQuadratic => {
            need_positive(*n.start())?;
            rows.extend(n.map(|n| identity_row(ids::apery_quadratic(n))));
        }
        IdentityName::AperyCubic => {
            need_positive(*n.start())?;
            rows.extend(n.map(|n| identity_row(ids::apery_cubic(n))));
        }
        IdentityName::BbAg => {
            need_positive(*n.start())?;
            rows.extend(n.map(|n| identity_row(ids::bb_ag(n))));
        }
        IdentityName::T31U | IdentityName::T31V => {
            need_positive(*n.start())?;
            for n in n {
                for m in m.clone() {
                    let r = match a.name {
                        IdentityName::T31U => ids::t31_u_identity(n, m),
                        _ => ids::t31_v_identity(n, m),
                    };
                    rows.push(identity_row(r));
                }
            }
        }
        IdentityName::L23 => {
            for n in n {
                for k in 1..n {
                    rows.extend(ids::l23_expansions(n, k)?.map(identity_row));
                }
            }
        }
        IdentityName::HOnes => {
            let j = parse_range::<usize>(&a.j)?;
            if *n.start() < 0 {
                return Err(UsageError("n must be nonnegative".into()));
            }
            for j in j {
                let ones = Composition::new(vec![1; j])?;
                for n in n.clone() {
                    let ok = h_ones_exact(j, n as u64)? == h_exact(&ones, n as u64);
                    let verdict = if ok { "pass" } else { "FAIL" };
                    rows.push((ok, format!("{verdict} h_ones [j={j};n={n}]")));
                }
            }
        }
        IdentityName::T33 | IdentityName::T42 => {
            let primes = parse_range::<u64>(&a.primes)?;
            for p in padiclab::arith::primes_in(*primes.start(), *primes.end()) {
                for k in 1..p as i64 {
                    let r = match a.name {
                        IdentityName::T33 => ids::t33_termwise(p, k),
                        _ => ids::t42_product_congruence(p, k),
                    };
                    rows.push(identity_row(r?));
                }
            }
        }
        IdentityName::Series => {
            let terms =
                u32::try_from(*n.end()).map_err(|_| UsageError("terms out of range".into()))?;
            for kind in SeriesKind::ALL {
                let s = ids::series_partial(kind, terms);
                rows.push((true, format!("{} N={terms} partial={s:.17e}", kind.name())));
            }
        }
    }
    let mut out = io::stdout().lock();
    for (ok, line) in &rows {
        if !a.quiet || !ok {
            writeln!(out, "{line}")?;
        }
    }
    let failed = rows.iter().filter(|(ok, _)| !ok).count();
    eprintln!(
        "{} rows: {} pass, {failed} fail",
        rows.len(),
        rows.len() - failed
    );
    Ok(failed == 0)
}

fn bench(a: BenchArgs) -> Usage<bool> {
    let checks = parse_checks(a.checks.as_deref().unwrap_or("all"))?;
    let primes = parse_range::<u64>(&a.primes)?;
    let jobs = match a.jobs {
        Some(0) => return Err(UsageError("worker count must be at least 1".into())),
        Some(j) => j,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let mut out = io::stdout().lock();
    writeln!(
        out,
        "{:<6} {:>7} {:>7} {:>10}",
        "check", "rows", "pass", "ms"
    )?;
    let mut all_ok = true;
    let mut total = (0, 0, 0.0);
    for id in checks {
        let mut cfg = SweepConfig::new(vec![id], primes.clone());
        cfg.jobs = jobs;
        let start = Instant::now();
        let rows = sweep(&cfg)?;
        let ms = start.elapsed().as_secs_f64() * 1e3;
        let pass = rows.iter().filter(|r| r.status == Status::Pass).count();
        all_ok &= rows.iter().all(|r| r.status.is_ok());
        writeln!(
            out,
            "{:<6} {:>7} {:>7} {:>10.1}",
            id.to_string(),
            rows.len(),
            pass,
            ms
        )?;
        total = (total.0 + rows.len(), total.1 + pass, total.2 + ms);
    }
    writeln!(
        out,
        "{:<6} {:>7} {:>7} {:>10.1}",
        "total", total.0, total.1, total.2
    )?;
    Ok(all_ok)
}

fn list() -> Usage<bool> {
    let mut out = io::stdout().lock();
    for c in registry() {
        writeln!(
            out,
            "{}  mod p^{}  [{}]  {}",
            c.id, c.t, c.prime_condition, c.description
        )?;
    }
    Ok(true)
}
