//! Parallel execution of verification suites.

use fflab_core::verify::{run_suite, CheckConfig, CheckReport, Suite};
use rayon::prelude::*;

/// Thread-count override from the `FFLAB_THREADS` environment variable.
/// Unset, unparsable, or `0` means the library picks (one thread per core).
pub fn configured_threads() -> Option<usize> {
    std::env::var("FFLAB_THREADS")
        .ok()?
        .parse::<usize>()
        .ok()
        .filter(|&n| n > 0)
}

/// Runs the given suites in parallel and returns their reports in input
/// order. Reports are identical for any thread count: each suite derives
/// all of its randomness from `(seed, trial, stream)` keys, and results are
/// collected by index rather than completion order.
pub fn run_reports(suites: &[Suite], config: &CheckConfig) -> Vec<CheckReport> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = configured_threads() {
        builder = builder.num_threads(n);
    }
    match builder.build() {
        Ok(pool) => {
            pool.install(|| suites.par_iter().map(|&s| run_suite(s, config)).collect())
        }
        // Pool construction can only fail on resource exhaustion; fall back
        // to sequential execution rather than aborting the run.
        Err(_) => suites.iter().map(|&s| run_suite(s, config)).collect(),
    }
}
