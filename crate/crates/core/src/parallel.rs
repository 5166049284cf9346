//! Data-parallel map over independent work items.
//!
//! With the `parallel` feature (on by default) items are distributed over the
//! rayon thread pool; without it, or with [`Execution::Sequential`], they run
//! in order on the calling thread. Results are always returned in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    /// Falls back to sequential execution when built without `parallel`.
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this setting actually runs on multiple threads in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

/// Applies `f` to every item, short-circuiting on the first error.
pub fn try_map<T, R, E, F>(items: &[T], execution: Execution, f: F) -> Result<Vec<R>, E>
where
    T: Sync,
    R: Send,
    E: Send,
    F: Fn(&T) -> Result<R, E> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if execution.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = execution;
    items.iter().map(f).collect()
}
