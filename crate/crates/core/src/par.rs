//! Data-parallel helpers with a sequential fallback.
//!
//! Every helper produces results in index order and reduces in a fixed
//! pairwise tree over fixed-size chunks, so outputs are bit-identical for any
//! thread count. Building without the `parallel` feature swaps rayon for
//! plain iterators behind the same signatures.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Samples per Monte Carlo reduction chunk. Chunk boundaries never depend on
/// the number of worker threads.
pub const REDUCE_CHUNK: usize = 1 << 14;

/// Evaluates `f(i)` for `i in 0..n` and returns the results in index order.
pub fn map_range<T, F>(n: usize, f: F) -> Vec<T>
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
pub fn map_slice<S, T, F>(items: &[S], f: F) -> Vec<T>
where
    S: Sync,
    T: Send,
    F: Fn(&S) -> T + Sync + Send,
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

/// Fills `buf` row by row: `f(row_index, row_slice)`.
pub fn for_each_row<T, F>(buf: &mut [T], row_len: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    if row_len == 0 {
        return;
    }
    #[cfg(feature = "parallel")]
    {
        buf.par_chunks_mut(row_len)
            .enumerate()
            .for_each(|(j, row)| f(j, row));
    }
    #[cfg(not(feature = "parallel"))]
    {
        buf.chunks_mut(row_len)
            .enumerate()
            .for_each(|(j, row)| f(j, row));
    }
}

/// Pairwise sum in a fixed tree shape (left-to-right pairs, level by level).
pub fn tree_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        _ => {
            let mut level: Vec<f64> = values.to_vec();
            while level.len() > 1 {
                level = level
                    .chunks(2)
                    .map(|p| if p.len() == 2 { p[0] + p[1] } else { p[0] })
                    .collect();
            }
            level[0]
        }
    }
}

/// Sums `f(i)` over `0..n`: sequential within each [`REDUCE_CHUNK`], then an
/// indexed tree reduction over the chunk sums.
pub fn chunked_sum<F>(n: usize, f: F) -> f64
where
    F: Fn(std::ops::Range<usize>) -> f64 + Sync + Send,
{
    let chunks = n.div_ceil(REDUCE_CHUNK);
    let partial = map_range(chunks, |k| {
        let lo = k * REDUCE_CHUNK;
        let hi = (lo + REDUCE_CHUNK).min(n);
        f(lo..hi)
    });
    tree_sum(&partial)
}

/// Runs `op` inside a pool with exactly `threads` workers (0 = library default).
///
/// Without the `parallel` feature this just calls `op`.
pub fn with_threads<R, F>(threads: usize, op: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    #[cfg(feature = "parallel")]
    {
        if threads == 0 {
            return op();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(op),
            Err(_) => op(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        op()
    }
}

/// Number of worker threads currently available.
pub fn current_threads() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads()
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_sum_is_thread_independent() {
        let f = |r: std::ops::Range<usize>| r.map(|i| 1.0 / (1.0 + i as f64)).sum::<f64>();
        let a = with_threads(1, || chunked_sum(100_000, f));
        let b = with_threads(4, || chunked_sum(100_000, f));
        assert_eq!(a.to_bits(), b.to_bits());
    }

    #[test]
    fn map_range_keeps_order() {
        let v = with_threads(3, || map_range(1000, |i| i * 2));
        assert!(v.iter().enumerate().all(|(i, &x)| x == 2 * i));
    }

    #[test]
    fn tree_sum_odd_lengths() {
        assert_eq!(tree_sum(&[1.0, 2.0, 3.0]), 6.0);
        assert_eq!(tree_sum(&[]), 0.0);
    }
}
