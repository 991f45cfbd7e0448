//! Data-parallel helpers. With the `parallel` feature the work is spread over
//! the rayon pool; without it every helper runs sequentially.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Execution strategy for the data-parallel loops of the engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

impl Exec {
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Maps `f` over `0..n`, preserving order.
    pub fn map_range<R, F>(self, n: usize, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// Maps `f` over a slice, preserving order.
    pub fn map<T, R, F>(self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Keeps the indices in `0..n` for which `pred` holds, in increasing order.
    pub fn filter_range<F>(self, n: usize, pred: F) -> Vec<usize>
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().filter(|&i| pred(i)).collect();
        }
        (0..n).filter(|&i| pred(i)).collect()
    }

    /// Folds `f(i)` over `0..n` with an associative `combine`.
    pub fn fold_range<A, F, C, I>(self, n: usize, init: I, f: F, combine: C) -> A
    where
        A: Send,
        I: Fn() -> A + Sync + Send,
        F: Fn(A, usize) -> A + Sync + Send,
        C: Fn(A, A) -> A + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return (0..n).into_par_iter().fold(&init, &f).reduce(&init, &combine);
        }
        let _ = &combine;
        (0..n).fold(init(), f)
    }
}
