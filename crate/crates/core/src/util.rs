//! Deterministic worker-pool helpers. Results are position-addressed, so
//! output never depends on the worker count.

use crate::error::Result;

/// Splits `data` into at most `jobs` contiguous chunks and runs `f` on each,
/// in parallel when `jobs > 1`. `f` receives the chunk's starting index.
pub fn parallel_chunks<T, F>(data: &mut [T], jobs: usize, f: F) -> Result<()>
where
    T: Send,
    F: Fn(usize, &mut [T]) -> Result<()> + Sync,
{
    let jobs = jobs.max(1);
    if jobs == 1 || data.len() <= 1 {
        return f(0, data);
    }
    let chunk_size = data.len().div_ceil(jobs);
    let mut results: Vec<Result<()>> = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for (i, chunk) in data.chunks_mut(chunk_size).enumerate() {
            let f = &f;
            handles.push(scope.spawn(move || f(i * chunk_size, chunk)));
        }
        for handle in handles {
            results.push(handle.join().expect("worker panicked"));
        }
    });
    results.into_iter().collect()
}

/// Maps `items` to a vector through `f`, sharded over `jobs` workers,
/// preserving order.
pub fn parallel_map<T, R, F>(items: &[T], jobs: usize, f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R> + Sync,
{
    let mut slots: Vec<Option<R>> = (0..items.len()).map(|_| None).collect();
    parallel_chunks(&mut slots, jobs, |start, chunk| {
        for (offset, slot) in chunk.iter_mut().enumerate() {
            *slot = Some(f(&items[start + offset])?);
        }
        Ok(())
    })?;
    Ok(slots
        .into_iter()
        .map(|s| s.expect("all slots filled on success"))
        .collect())
}
