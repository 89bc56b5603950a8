use std::ops::RangeInclusive;

use rayon::prelude::*;

use super::{lookup, CheckId, CheckOptions, CongruenceReport, ParamGrid, PrimeRunner};
use crate::arith::primes_in;
use crate::{Error, Result};

/// What to sweep and how.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub ids: Vec<CheckId>,
    pub primes: RangeInclusive<u64>,
    pub grid: ParamGrid,
    /// Worker threads; at least one.
    pub jobs: usize,
    pub options: CheckOptions,
}

impl SweepConfig {
    pub fn new(ids: Vec<CheckId>, primes: RangeInclusive<u64>) -> Self {
        SweepConfig {
            ids,
            primes,
            grid: ParamGrid::default(),
            jobs: rayon::current_num_threads(),
            options: CheckOptions::default(),
        }
    }
}

pub(crate) fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| Error::OutOfRange(format!("worker pool: {e}")))
}

fn rows_for_prime(config: &SweepConfig, p: u64) -> Vec<CongruenceReport> {
    let mut runner = PrimeRunner::new(p, config.options);
    let mut rows = Vec::new();
    for &id in &config.ids {
        let entry = lookup(id);
        for params in entry.grid(&config.grid) {
            rows.push(runner.run(entry, &params));
        }
    }
    rows
}

/// Every (id, prime, params) row, sorted by that key. Each worker owns the
/// contexts of the primes it handles, so the result does not depend on the
/// number of workers.
pub fn sweep(config: &SweepConfig) -> Result<Vec<CongruenceReport>> {
    let mut ids = config.ids.clone();
    ids.sort();
    ids.dedup();
    let config = SweepConfig {
        ids,
        ..config.clone()
    };
    let primes = primes_in(*config.primes.start(), *config.primes.end());
    let pool = pool(config.jobs)?;
    // largest primes first: they dominate the running time
    let mut rows: Vec<CongruenceReport> = pool.install(|| {
        primes
            .par_iter()
            .rev()
            .flat_map_iter(|&p| rows_for_prime(&config, p))
            .collect()
    });
    rows.sort_by(|a, b| a.key().cmp(&b.key()));
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suite::Status;

    #[test]
    fn empty_range_gives_empty_report() {
        let cfg = SweepConfig::new(CheckId::all().collect(), 24..=28);
        assert!(sweep(&cfg).unwrap().is_empty());
    }

    #[test]
    fn small_sweep_passes_and_is_sorted() {
        let cfg = SweepConfig::new(CheckId::all().collect(), 2..=37);
        let rows = sweep(&cfg).unwrap();
        for r in &rows {
            assert!(r.status.is_ok(), "{r}");
        }
        assert!(rows.windows(2).all(|w| w[0].key() < w[1].key()));
        assert!(rows
            .iter()
            .filter(|r| r.p == 2)
            .all(|r| r.status == Status::NotApplicable));
    }
}
