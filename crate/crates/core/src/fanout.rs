//! Ensemble fan-out. With the `parallel` feature (default) members run on
//! the rayon pool; otherwise a plain sequential loop. Results come back in
//! member order either way, and reductions downstream are performed in that
//! fixed order, so outputs are byte-identical across schedules.

/// Runs `job` for member indices `0..n` and collects results in order.
#[cfg(feature = "parallel")]
pub fn run_ensemble<T: Send>(n: usize, job: impl Fn(usize) -> T + Sync) -> Vec<T> {
    use rayon::prelude::*;
    (0..n).into_par_iter().map(job).collect()
}

/// Sequential fallback used when the `parallel` feature is disabled.
#[cfg(not(feature = "parallel"))]
pub fn run_ensemble<T: Send>(n: usize, job: impl Fn(usize) -> T + Sync) -> Vec<T> {
    run_ensemble_seq(n, job)
}

/// Always-sequential variant (baseline for benchmarks).
pub fn run_ensemble_seq<T: Send>(n: usize, job: impl Fn(usize) -> T + Sync) -> Vec<T> {
    (0..n).map(job).collect()
}
