use rayon::{ThreadPool, ThreadPoolBuilder};

pub const WORKERS_ENV: &str = "HYPERTURAN_WORKERS";

/// `HYPERTURAN_WORKERS` if set to a positive integer, else every available core.
pub fn workers() -> usize {
    std::env::var(WORKERS_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .filter(|&w| w > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

pub fn pool() -> Result<ThreadPool, rayon::ThreadPoolBuildError> {
    ThreadPoolBuilder::new().num_threads(workers()).build()
}

/// Splits `0..total` into at most `pieces` contiguous ranges of near-equal length.
pub fn chunks(total: u64, pieces: usize) -> Vec<std::ops::Range<u64>> {
    let pieces = (pieces as u64).clamp(1, total.max(1));
    let base = total / pieces;
    let extra = total % pieces;
    let mut start = 0;
    (0..pieces)
        .map(|i| {
            let len = base + u64::from(i < extra);
            let r = start..start + len;
            start += len;
            r
        })
        .collect()
}
