//! Execution strategy for grid-shaped workloads.
//!
//! With the `parallel` feature the maps fan out through rayon; without it they
//! run sequentially. Both paths preserve input order, so every consumer sees
//! identical, deterministic output regardless of feature set or thread count.

#[cfg(feature = "parallel")]
pub(crate) fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub(crate) fn map_indexed<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..n).map(f).collect()
}

/// Caps the worker-thread count from the `POINTSCATTER_THREADS` environment
/// variable, if set to a positive integer. Safe to call more than once; only
/// the first successful initialization takes effect. A no-op in sequential
/// builds.
pub fn configure_threads_from_env() {
    #[cfg(feature = "parallel")]
    {
        if let Ok(raw) = std::env::var(crate::tol::THREADS_ENV_VAR) {
            if let Ok(n) = raw.trim().parse::<usize>() {
                if n > 0 {
                    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
                }
            }
        }
    }
}
