//! Sequential or rayon-backed evaluation of independent work items.
//!
//! Results always come back in item order, so reports built from them do not
//! depend on thread scheduling.

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Uses the rayon pool when the `parallel` feature is enabled and runs
    /// sequentially otherwise.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

impl Execution {
    /// `[f(0), f(1), …, f(count − 1)]`.
    pub fn map_ordered<T, F>(self, count: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        match self {
            Execution::Sequential => (0..count).map(f).collect(),
            Execution::Parallel => parallel_map(count, f),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Execution::Sequential => "sequential",
            Execution::Parallel if cfg!(feature = "parallel") => "parallel",
            Execution::Parallel => "parallel (built without rayon, running sequentially)",
        }
    }
}

#[cfg(feature = "parallel")]
fn parallel_map<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    use rayon::prelude::*;
    (0..count).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn parallel_map<T, F>(count: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    (0..count).map(f).collect()
}

/// Runs `op` on a dedicated pool of `threads` workers, or on the global pool
/// when `threads` is `None`.
#[cfg(feature = "parallel")]
pub fn with_threads<R: Send>(threads: Option<usize>, op: impl FnOnce() -> R + Send) -> Result<R> {
    match threads {
        None => Ok(op()),
        Some(0) => Err(Error::invalid("thread count must be positive")),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Error::unsupported(format!("cannot start {t} worker threads: {e}")))?;
            Ok(pool.install(op))
        }
    }
}

#[cfg(not(feature = "parallel"))]
pub fn with_threads<R: Send>(threads: Option<usize>, op: impl FnOnce() -> R + Send) -> Result<R> {
    if threads == Some(0) {
        return Err(Error::invalid("thread count must be positive"));
    }
    Ok(op())
}
