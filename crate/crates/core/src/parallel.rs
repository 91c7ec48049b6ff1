//! Data-parallel sweeps over index ranges.
//!
//! With the `parallel` feature (on by default) the dispatching functions run
//! on the rayon pool; without it they fall back to the sequential versions.
//! Both versions are exported so callers and benches can pick explicitly.
//! Results never depend on how the range is split: the reductions used here
//! (max, element-wise map) are exact in any order.

/// Maximum of `f(k)` for `k` in `0..=last`.
pub fn max_over(last: usize, f: impl Fn(usize) -> f64 + Sync) -> f64 {
    #[cfg(feature = "parallel")]
    return max_over_parallel(last, f);
    #[cfg(not(feature = "parallel"))]
    max_over_sequential(last, f)
}

pub fn max_over_sequential(last: usize, f: impl Fn(usize) -> f64) -> f64 {
    (0..=last).map(f).fold(f64::NEG_INFINITY, f64::max)
}

#[cfg(feature = "parallel")]
pub fn max_over_parallel(last: usize, f: impl Fn(usize) -> f64 + Sync) -> f64 {
    use rayon::prelude::*;
    (0..last + 1)
        .into_par_iter()
        .with_min_len(4096)
        .map(&f)
        .reduce(|| f64::NEG_INFINITY, f64::max)
}

/// `(0..n).map(f).collect()`, in parallel when enabled. Output order is the
/// index order.
pub fn map_indices<T: Send>(n: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    (0..n).map(f).collect()
}
