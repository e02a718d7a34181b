use rayon::prelude::*;

use crate::error::{Result, SpinexError};

/// Evaluates `f(i)` for `i in 0..n` on `workers` threads and returns the
/// results in index order. Each value depends only on its index, so the
/// output is the same for every worker count.
pub(crate) fn map_indexed<T, F>(n: usize, workers: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if workers <= 1 || n < 2 {
        return Ok((0..n).map(f).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| SpinexError::argument(format!("cannot start {workers} workers: {e}")))?;
    Ok(pool.install(|| (0..n).into_par_iter().map(f).collect()))
}
