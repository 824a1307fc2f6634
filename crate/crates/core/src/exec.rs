//! Sequential and data-parallel drivers for the index-range loops used by
//! illegal-edge scanning and the checkers.
//!
//! Parallel execution needs the `parallel` feature; without it
//! [`Execution::Parallel`] runs sequentially. Results never depend on the
//! mode: searches return the lowest matching index and collections keep
//! index order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Execution {
    Sequential,
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
    /// Whether this mode actually runs on the thread pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Lowest `i < n` with `pred(i)`.
    pub fn find_first<F>(self, n: usize, pred: F) -> Option<usize>
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().find_first(|&i| pred(i));
        }
        (0..n).find(|&i| pred(i))
    }

    /// Concatenation of `f(0), f(1), …, f(n-1)`.
    pub fn flat_map<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> Vec<T> + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().flat_map_iter(f).collect();
        }
        (0..n).flat_map(f).collect()
    }

    /// Number of `i < n` with `pred(i)`.
    pub fn count<F>(self, n: usize, pred: F) -> usize
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().filter(|&i| pred(i)).count();
        }
        (0..n).filter(|&i| pred(i)).count()
    }
}
