//! Execution policy for the data-parallel loops.
//!
//! With the `parallel` feature, `threads > 1` runs loops on a dedicated rayon
//! pool. Without the feature, or with one thread, everything runs on the
//! calling thread. Results never depend on the thread count.

#[cfg(feature = "parallel")]
use rayon::prelude::*;
#[cfg(feature = "parallel")]
use std::sync::Arc;

#[derive(Clone, Default)]
pub struct Execution {
    threads: usize,
    #[cfg(feature = "parallel")]
    pool: Option<Arc<rayon::ThreadPool>>,
}

impl std::fmt::Debug for Execution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Execution").field("threads", &self.threads()).finish()
    }
}

impl Execution {
    pub fn sequential() -> Self {
        Execution { threads: 1, ..Default::default() }
    }

    /// `threads == 0` means one worker per available core.
    #[cfg(feature = "parallel")]
    pub fn with_threads(threads: usize) -> Self {
        let threads =
            if threads == 0 { std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1) } else { threads };
        if threads <= 1 {
            return Self::sequential();
        }
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("failed to start worker pool");
        Execution { threads, pool: Some(Arc::new(pool)) }
    }

    #[cfg(not(feature = "parallel"))]
    pub fn with_threads(_threads: usize) -> Self {
        Self::sequential()
    }

    pub fn threads(&self) -> usize {
        self.threads.max(1)
    }

    pub fn is_parallel(&self) -> bool {
        self.threads() > 1
    }

    /// Runs `f` on every item.
    pub fn for_each<T, F>(&self, items: Vec<T>, f: F)
    where
        T: Send,
        F: Fn(T) + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            pool.install(|| items.into_par_iter().for_each(f));
            return;
        }
        items.into_iter().for_each(f);
    }

    /// Like [`for_each`](Self::for_each) with per-worker scratch state.
    pub fn for_each_init<T, S, I, F>(&self, items: Vec<T>, init: I, f: F)
    where
        T: Send,
        I: Fn() -> S + Sync + Send,
        F: Fn(&mut S, T) + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            pool.install(|| items.into_par_iter().for_each_init(&init, |s, item| f(s, item)));
            return;
        }
        let mut scratch = init();
        items.into_iter().for_each(|item| f(&mut scratch, item));
    }

    /// Concatenates, in index order, what `f` pushes for each index.
    pub fn flat_map_range<T, F>(&self, len: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize, &mut Vec<T>) + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if let Some(pool) = &self.pool {
            return pool.install(|| {
                (0..len)
                    .into_par_iter()
                    .flat_map_iter(|i| {
                        let mut out = Vec::new();
                        f(i, &mut out);
                        out
                    })
                    .collect()
            });
        }
        let mut out = Vec::new();
        for i in 0..len {
            f(i, &mut out);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_map_keeps_order() {
        for exec in [Execution::sequential(), Execution::with_threads(4)] {
            let v = exec.flat_map_range(100, |i, out| out.extend(std::iter::repeat_n(i, i % 3)));
            let want: Vec<usize> = (0..100).flat_map(|i| std::iter::repeat_n(i, i % 3)).collect();
            assert_eq!(v, want);
        }
    }

    #[test]
    fn zero_threads_means_all_cores() {
        assert!(Execution::with_threads(0).threads() >= 1);
        assert_eq!(Execution::sequential().threads(), 1);
    }
}
