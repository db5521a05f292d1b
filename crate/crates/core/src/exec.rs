//! Sequential or rayon-backed execution of independent work items.
//!
//! Results always come back in input order, so the worker count never
//! changes what a sweep reports. Without the `parallel` feature every
//! strategy runs on the calling thread.

use std::env;

/// Environment variable that overrides the worker count.
pub const WORKERS_ENV: &str = "WALKDET_WORKERS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel { workers: usize },
}

impl Exec {
    pub fn with_workers(workers: usize) -> Exec {
        if workers <= 1 {
            Exec::Sequential
        } else {
            Exec::Parallel { workers }
        }
    }

    /// `WALKDET_WORKERS` if set, otherwise the available parallelism.
    pub fn from_env() -> Exec {
        let workers = env::var(WORKERS_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
        Exec::with_workers(workers)
    }

    pub fn worker_count(&self) -> usize {
        match self {
            Exec::Sequential => 1,
            Exec::Parallel { workers } => *workers,
        }
    }

    pub fn runner(&self) -> Runner {
        Runner::new(*self)
    }
}

impl Default for Exec {
    fn default() -> Self {
        Exec::from_env()
    }
}

/// Holds the thread pool for the lifetime of a sweep.
pub struct Runner {
    #[cfg(feature = "parallel")]
    pool: Option<rayon::ThreadPool>,
}

impl Runner {
    fn new(exec: Exec) -> Runner {
        #[cfg(feature = "parallel")]
        {
            let pool = match exec {
                Exec::Sequential => None,
                Exec::Parallel { workers } => Some(
                    rayon::ThreadPoolBuilder::new().num_threads(workers).build().expect("failed to build thread pool"),
                ),
            };
            Runner { pool }
        }
        #[cfg(not(feature = "parallel"))]
        {
            let _ = exec;
            Runner {}
        }
    }

    /// Applies `f` to every item, preserving input order.
    pub fn map<T, R, F>(&self, items: &[T], f: F) -> Vec<R>
    where
        T: Sync,
        R: Send,
        F: Fn(&T) -> R + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            use rayon::prelude::*;
            return pool.install(|| items.par_iter().map(&f).collect());
        }
        items.iter().map(f).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let items: Vec<u64> = (0..1000).collect();
        let seq = Exec::Sequential.runner().map(&items, |x| x * x);
        let par = Exec::with_workers(4).runner().map(&items, |x| x * x);
        assert_eq!(seq, par);
    }

    #[test]
    fn one_worker_is_sequential() {
        assert_eq!(Exec::with_workers(1), Exec::Sequential);
        assert_eq!(Exec::with_workers(0).worker_count(), 1);
    }
}
