//! Data-parallel helpers with a sequential fallback.
//!
//! Every parallel entry point in the crate takes an [`Execution`] and routes
//! through these helpers, so results are identical (and identically ordered)
//! whichever mode runs. Without the `parallel` feature, `Execution::Parallel`
//! silently runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How index-parallel loops are executed.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// True if this build can actually run loops on the rayon pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Maps `f` over `0..n`, returning results in index order.
pub fn map_indexed<T, F>(exec: Execution, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

/// Maps `f` over a slice, returning results in slice order.
pub fn map_slice<S, T, F>(exec: Execution, items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Like [`map_indexed`] but keeps only the `Some` results, in index order.
pub fn filter_map_indexed<T, F>(exec: Execution, n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return (0..n).into_par_iter().filter_map(f).collect();
    }
    let _ = exec;
    (0..n).filter_map(f).collect()
}
