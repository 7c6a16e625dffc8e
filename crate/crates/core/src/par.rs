//! Execution shim. With the `parallel` feature the helpers fan out over the
//! rayon pool; without it they run the same closures in index order. Callers
//! that reduce floating-point values do so in a fixed order so that both
//! builds produce bit-identical output.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Number of sources folded into one partial sum by chunked reductions.
pub(crate) const REDUCE_CHUNK: usize = 32;

/// Evaluates `f(i)` for every `i < n` and returns the results in index order.
pub(crate) fn map_indices<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Maps over a slice, preserving order.
pub fn map_slice<A, T, F>(items: &[A], f: F) -> Vec<T>
where
    A: Sync,
    T: Send,
    F: Fn(&A) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Sums per-index contribution vectors of length `len`.
///
/// Indices are grouped into fixed chunks of [`REDUCE_CHUNK`]; each chunk is
/// accumulated sequentially and the chunk totals are added in chunk order.
/// The grouping does not depend on the thread count.
pub(crate) fn chunked_sum<F>(n: usize, len: usize, accumulate: F) -> Vec<f64>
where
    F: Fn(usize, &mut [f64]) + Sync + Send,
{
    let chunks = n.div_ceil(REDUCE_CHUNK);
    let partials = map_indices(chunks, |c| {
        let mut acc = vec![0.0; len];
        let end = ((c + 1) * REDUCE_CHUNK).min(n);
        for i in c * REDUCE_CHUNK..end {
            accumulate(i, &mut acc);
        }
        acc
    });
    let mut total = vec![0.0; len];
    for part in partials {
        for (t, v) in total.iter_mut().zip(part) {
            *t += v;
        }
    }
    total
}

/// Runs `f` with at most `jobs` worker threads (`0` means the rayon default).
/// Without the `parallel` feature this simply calls `f`.
pub fn with_threads<R: Send>(jobs: usize, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    {
        if jobs == 0 {
            return f();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = jobs;
        f()
    }
}

/// Whether the crate was built with rayon support.
pub const fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
