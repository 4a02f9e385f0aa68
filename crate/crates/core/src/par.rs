//! Data-parallel helpers.
//!
//! With the `parallel` feature (default) these dispatch to rayon; without it
//! they run as plain sequential iterators. Every helper preserves input order
//! in its output, so results are identical either way.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, keeping order.
pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Maps `f` over `0..len`, keeping order.
pub fn map_range<R, F>(len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..len).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).map(f).collect()
    }
}

/// Associative map-reduce over `0..len`.
pub fn fold_range<R, F, G>(len: usize, identity: R, f: F, combine: G) -> R
where
    R: Send + Sync + Clone,
    F: Fn(usize) -> R + Sync + Send,
    G: Fn(R, R) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..len)
            .into_par_iter()
            .map(f)
            .reduce(|| identity.clone(), &combine)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).map(f).fold(identity, combine)
    }
}

/// Caps the global worker pool. A no-op without the `parallel` feature, or
/// when the pool was already initialised.
pub fn configure_threads(threads: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global();
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
    }
}

/// Reads `FLAGCOMB_THREADS` and applies it when set to a positive integer.
pub fn configure_from_env() {
    if let Some(n) = std::env::var("FLAGCOMB_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        configure_threads(n);
    }
}
