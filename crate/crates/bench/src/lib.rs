//! Shared fixtures for the kernel benchmarks.

use padiclab::suite::{CheckId, SweepConfig};

/// Primes of increasing size used as benchmark inputs.
pub const PRIMES: [u64; 4] = [101, 503, 1009, 1999];

/// A single-threaded sweep of `ids` over `lo..=hi`.
pub fn serial_sweep(ids: &[u8], lo: u64, hi: u64) -> SweepConfig {
    let ids = ids
        .iter()
        .map(|&n| CheckId::new(n).expect("valid id"))
        .collect();
    let mut cfg = SweepConfig::new(ids, lo..=hi);
    cfg.jobs = 1;
    cfg
}
