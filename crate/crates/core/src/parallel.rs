//! Data-parallel map over index ranges. Backed by rayon with the `parallel`
//! feature, a plain iterator otherwise. Results always come back in index
//! order so callers stay deterministic either way.

pub use self::actual::{is_parallel, map_range};

#[cfg(feature = "parallel")]
mod actual {
    use rayon::prelude::*;

    /// Maps `f` over `0..n` in parallel and collects in index order.
    pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
    where
        F: Fn(usize) -> R + Sync + Send,
        R: Send,
    {
        (0..n).into_par_iter().map(f).collect()
    }

    pub fn is_parallel() -> bool {
        true
    }
}

#[cfg(not(feature = "parallel"))]
mod actual {
    /// Maps `f` over `0..n` sequentially.
    pub fn map_range<R, F>(n: usize, f: F) -> Vec<R>
    where
        F: Fn(usize) -> R + Sync + Send,
        R: Send,
    {
        (0..n).map(f).collect()
    }

    pub fn is_parallel() -> bool {
        false
    }
}

/// Always-sequential twin of [`map_range`], used by benchmarks and
/// determinism checks to compare against the parallel path.
pub fn map_range_sequential<R, F>(n: usize, f: F) -> Vec<R>
where
    F: Fn(usize) -> R,
{
    (0..n).map(f).collect()
}
