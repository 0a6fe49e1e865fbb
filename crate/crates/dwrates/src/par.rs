//! Data-parallel helpers with a sequential fallback.
//!
//! With the default `parallel` feature the mappers run on the rayon pool;
//! without it they degrade to plain loops. Callers that need stream-level
//! determinism (Monte Carlo) key their RNG off the chunk index, so the
//! result is identical either way for a fixed chunk layout.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over the indices `0..n`, in parallel when enabled and
/// `workers > 1`.
pub fn map_indexed<T, F>(n: usize, workers: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        if workers > 1 {
            return rayon::ThreadPoolBuilder::new()
                .num_threads(workers)
                .build()
                .map(|pool| pool.install(|| (0..n).into_par_iter().map(&f).collect()))
                .unwrap_or_else(|_| (0..n).map(&f).collect());
        }
    }
    let _ = workers;
    (0..n).map(f).collect()
}

/// Default worker count: the `DWRATES_WORKERS` environment variable when
/// set, otherwise 1 (fully deterministic).
pub fn default_workers() -> usize {
    std::env::var("DWRATES_WORKERS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&w| w >= 1)
        .unwrap_or(1)
}
