//! Run configuration: command-line flags merged over an optional TOML file.

use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, ValueEnum};
use serde::Deserialize;

use padiclab::suite::{CheckOptions, ParamGrid};
use padiclab::CheckId;

/// Errors that end the run with exit code 2. An empty message marks a
/// closed output pipe, which ends the run quietly.
#[derive(Debug)]
pub struct UsageError(pub String);

impl From<padiclab::Error> for UsageError {
    fn from(e: padiclab::Error) -> Self {
        UsageError(e.to_string())
    }
}

impl From<std::io::Error> for UsageError {
    fn from(e: std::io::Error) -> Self {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            UsageError(String::new())
        } else {
            UsageError(e.to_string())
        }
    }
}

pub type Usage<T> = Result<T, UsageError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    /// One JSON object per line.
    Json,
    Csv,
}

/// Flags shared by the report-producing subcommands.
#[derive(Debug, Clone, Default, Args)]
pub struct RunArgs {
    /// TOML file with defaults for these flags; flags win on conflict.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Inclusive prime range `a..b` (or a single prime).
    #[arg(long)]
    pub primes: Option<String>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Report path; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads. Defaults to $PADICLAB_JOBS, then to the number of CPUs.
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Digits added to every working precision.
    #[arg(long)]
    pub extra_precision: Option<u32>,
    /// Fill the `ms` column with wall times.
    #[arg(long)]
    pub timings: bool,
}

/// Parameter grid overrides for `verify`.
#[derive(Debug, Clone, Default, Args)]
pub struct GridArgs {
    /// Range of m for C15 and C16.
    #[arg(long, allow_hyphen_values = true)]
    pub lucas_m: Option<String>,
    /// Range of m for C24.
    #[arg(long)]
    pub dual_m: Option<String>,
    /// Range of r for C24.
    #[arg(long)]
    pub dual_r: Option<String>,
    /// Largest weight a + b for C11.
    #[arg(long)]
    pub weight_max: Option<i64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileGrid {
    lucas_m: Option<String>,
    dual_m: Option<String>,
    dual_r: Option<String>,
    weight_max: Option<i64>,
}

/// Contents of a `--config` file.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    checks: Option<String>,
    primes: Option<String>,
    format: Option<Format>,
    out: Option<PathBuf>,
    jobs: Option<usize>,
    extra_precision: Option<u32>,
    timings: Option<bool>,
    #[serde(default)]
    grid: FileGrid,
}

fn load(path: Option<&Path>) -> Usage<FileConfig> {
    let Some(path) = path else {
        return Ok(FileConfig::default());
    };
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

/// Parses `a..b` (inclusive) or a single value.
pub fn parse_range<T: FromStr + PartialOrd + Copy>(s: &str) -> Usage<RangeInclusive<T>> {
    let bad = || UsageError(format!("bad range `{s}`, expected a..b"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s.trim(), s.trim()),
    };
    let lo: T = lo.parse().map_err(|_| bad())?;
    let hi: T = hi.parse().map_err(|_| bad())?;
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

pub fn parse_checks(s: &str) -> Usage<Vec<CheckId>> {
    if s.trim() == "all" {
        return Ok(CheckId::all().collect());
    }
    s.split(',')
        .map(|id| id.trim().parse::<CheckId>().map_err(UsageError::from))
        .collect()
}

fn default_jobs() -> Usage<usize> {
    match std::env::var("PADICLAB_JOBS") {
        Ok(v) => v.trim().parse().map_err(|_| {
            UsageError(format!(
                "PADICLAB_JOBS must be a positive integer, got `{v}`"
            ))
        }),
        Err(_) => Ok(std::thread::available_parallelism().map_or(1, |n| n.get())),
    }
}

/// Fully resolved settings of one run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub checks: Vec<CheckId>,
    pub primes: RangeInclusive<u64>,
    pub grid: ParamGrid,
    pub jobs: usize,
    pub options: CheckOptions,
    pub format: Format,
    pub out: Option<PathBuf>,
}

pub const DEFAULT_PRIMES: &str = "3..200";

impl RunConfig {
    pub fn resolve(run: &RunArgs, checks: Option<&str>, grid: &GridArgs) -> Usage<RunConfig> {
        let file = load(run.config.as_deref())?;
        let checks = parse_checks(checks.or(file.checks.as_deref()).unwrap_or("all"))?;
        let primes = parse_range::<u64>(
            run.primes
                .as_deref()
                .or(file.primes.as_deref())
                .unwrap_or(DEFAULT_PRIMES),
        )?;
        if *primes.start() < 3 {
            return Err(UsageError(format!(
                "prime range must start at 3 or above, got {}",
                primes.start()
            )));
        }
        let jobs = match run.jobs.or(file.jobs) {
            Some(j) => j,
            None => default_jobs()?,
        };
        if jobs == 0 {
            return Err(UsageError("worker count must be at least 1".into()));
        }
        let mut param_grid = ParamGrid::default();
        if let Some(r) = grid.lucas_m.as_deref().or(file.grid.lucas_m.as_deref()) {
            param_grid.lucas_m = parse_range(r)?;
        }
        if let Some(r) = grid.dual_m.as_deref().or(file.grid.dual_m.as_deref()) {
            param_grid.dual_m = parse_range(r)?;
        }
        if let Some(r) = grid.dual_r.as_deref().or(file.grid.dual_r.as_deref()) {
            let r = parse_range::<i64>(r)?;
            if *r.start() < 0 {
                return Err(UsageError("C24 needs r >= 0".into()));
            }
            param_grid.dual_r = r;
        }
        if let Some(w) = grid.weight_max.or(file.grid.weight_max) {
            param_grid.weight_max = w;
        }
        Ok(RunConfig {
            checks,
            primes,
            grid: param_grid,
            jobs,
            options: CheckOptions {
                extra_precision: run.extra_precision.or(file.extra_precision).unwrap_or(0),
                recheck_failures: true,
                timings: run.timings || file.timings.unwrap_or(false),
            },
            format: run.format.or(file.format).unwrap_or(Format::Json),
            out: run.out.clone().or(file.out),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range::<i64>("-5..6").unwrap(), -5..=6);
        assert_eq!(parse_range::<u64>("7").unwrap(), 7..=7);
        assert!(parse_range::<u64>("9..7").is_err());
        assert!(parse_range::<u64>("x..7").is_err());
    }

    #[test]
    fn checks() {
        assert_eq!(parse_checks("all").unwrap().len(), 27);
        assert_eq!(parse_checks("C01, c17").unwrap().len(), 2);
        assert!(parse_checks("C28").is_err());
    }

    #[test]
    fn flags_win_over_file() {
        let dir = std::env::temp_dir().join(format!("padiclab-config-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.toml");
        std::fs::write(
            &path,
            "primes = \"3..50\"\njobs = 3\nformat = \"csv\"\n[grid]\nlucas_m = \"0..2\"\n",
        )
        .unwrap();
        let run = RunArgs {
            config: Some(path),
            primes: Some("5..7".into()),
            ..Default::default()
        };
        let cfg = RunConfig::resolve(&run, None, &GridArgs::default()).unwrap();
        assert_eq!(cfg.primes, 5..=7);
        assert_eq!(cfg.jobs, 3);
        assert_eq!(cfg.format, Format::Csv);
        assert_eq!(cfg.grid.lucas_m, 0..=2);
        std::fs::remove_dir_all(dir).unwrap();
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let parsed: Result<FileConfig, _> = toml::from_str("prime = \"3..5\"");
        assert!(parsed.is_err());
    }
}
