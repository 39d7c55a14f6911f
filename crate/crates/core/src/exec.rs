//! Sequential / rayon switch for the data-parallel inner loops.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How data-parallel stages execute.
///
/// Without the `parallel` feature only [`Parallelism::Sequential`] exists. Both paths
/// produce identical results; only wall-clock time differs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Parallelism {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Rayon,
}

impl Parallelism {
    /// Every variant compiled into this build.
    pub fn available() -> &'static [Parallelism] {
        #[cfg(feature = "parallel")]
        {
            &[Parallelism::Sequential, Parallelism::Rayon]
        }
        #[cfg(not(feature = "parallel"))]
        {
            &[Parallelism::Sequential]
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Parallelism::Sequential => "sequential",
            #[cfg(feature = "parallel")]
            Parallelism::Rayon => "rayon",
        }
    }

    /// Order-preserving map over a slice.
    pub fn map<T, U, F>(self, items: &[T], f: F) -> Vec<U>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> U + Sync + Send,
    {
        match self {
            Parallelism::Sequential => items.iter().map(f).collect(),
            #[cfg(feature = "parallel")]
            Parallelism::Rayon => items.par_iter().map(f).collect(),
        }
    }

    /// Order-preserving map over `0..n`, concatenating the per-index outputs.
    pub fn flat_map_range<U, F>(self, n: usize, f: F) -> Vec<U>
    where
        U: Send,
        F: Fn(usize) -> Vec<U> + Sync + Send,
    {
        match self {
            Parallelism::Sequential => (0..n).flat_map(f).collect(),
            #[cfg(feature = "parallel")]
            Parallelism::Rayon => (0..n).into_par_iter().flat_map_iter(f).collect(),
        }
    }
}
