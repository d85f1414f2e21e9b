//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) the `Parallel` mode runs on the
//! rayon global pool. Without it, both modes execute sequentially, so callers
//! never need their own `cfg` switches.

use std::ops::Range;

/// How an enumeration-heavy loop should be executed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExecutionMode {
    Sequential,
    Parallel,
}

impl ExecutionMode {
    /// `Parallel` when the crate was built with rayon, else `Sequential`.
    pub const fn default_mode() -> Self {
        if cfg!(feature = "parallel") {
            ExecutionMode::Parallel
        } else {
            ExecutionMode::Sequential
        }
    }
}

impl Default for ExecutionMode {
    fn default() -> Self {
        Self::default_mode()
    }
}

// Below this many items the rayon split overhead dominates.
#[cfg(feature = "parallel")]
const MIN_PARALLEL_LEN: u64 = 1 << 10;

/// Maps every index in `range` and folds the results with an associative
/// `reduce`. `reduce` must be associative for the result to be independent of
/// the execution mode; ties must therefore be broken inside `reduce`.
pub fn map_reduce<T, M, R>(mode: ExecutionMode, range: Range<u64>, identity: T, map: M, reduce: R) -> T
where
    T: Send + Sync + Clone,
    M: Fn(u64) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode == ExecutionMode::Parallel && range.end.saturating_sub(range.start) >= MIN_PARALLEL_LEN {
        use rayon::prelude::*;
        return range.into_par_iter().map(map).reduce(|| identity.clone(), reduce);
    }
    let _ = mode;
    range.map(map).fold(identity, reduce)
}

/// Order-preserving map over a slice.
pub fn map_slice<I, T, F>(mode: ExecutionMode, items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode == ExecutionMode::Parallel && items.len() > 1 {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = mode;
    items.iter().map(f).collect()
}

/// Order-preserving map over an index range.
pub fn map_range<T, F>(mode: ExecutionMode, range: Range<u64>, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if mode == ExecutionMode::Parallel && range.end.saturating_sub(range.start) >= MIN_PARALLEL_LEN {
        use rayon::prelude::*;
        return range.into_par_iter().map(f).collect();
    }
    let _ = mode;
    range.map(f).collect()
}

/// True iff `pred` holds for every index.
pub fn all(mode: ExecutionMode, range: Range<u64>, pred: impl Fn(u64) -> bool + Sync + Send) -> bool {
    #[cfg(feature = "parallel")]
    if mode == ExecutionMode::Parallel && range.end.saturating_sub(range.start) >= MIN_PARALLEL_LEN {
        use rayon::prelude::*;
        return range.into_par_iter().all(pred);
    }
    let _ = mode;
    range.into_iter().all(pred)
}
