//! Batches of independent runs.
//!
//! Every `(config, seed)` pair is an isolated run. Results come back in
//! input order whatever the degree of parallelism.

use rayon::prelude::*;

use super::{run, RunConfig, RunResult};
use crate::error::{Error, Result};

#[derive(Debug)]
pub struct BatchItem {
    pub config_index: usize,
    pub seed: u64,
    pub result: Result<RunResult>,
}

/// Runs every config with every seed on `jobs` worker threads.
pub fn run_batch(configs: &[RunConfig], seeds: &[u64], jobs: usize) -> Result<Vec<BatchItem>> {
    for_each_run(configs, seeds, jobs, |item| item)
}

/// Like [`run_batch`], but hands each finished run to `sink` on the worker
/// that produced it, so results need not be held in memory.
pub fn for_each_run<T, F>(configs: &[RunConfig], seeds: &[u64], jobs: usize, sink: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(BatchItem) -> T + Sync,
{
    if configs.is_empty() || seeds.is_empty() {
        return Err(Error::Config("empty batch".into()));
    }
    let work: Vec<(usize, u64)> = (0..configs.len()).flat_map(|c| seeds.iter().map(move |&s| (c, s))).collect();
    let exec = |&(c, s): &(usize, u64)| {
        let cfg = RunConfig { seed: s, ..configs[c].clone() };
        sink(BatchItem { config_index: c, seed: s, result: run(&cfg) })
    };
    if jobs <= 1 {
        return Ok(work.iter().map(exec).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    Ok(pool.install(|| work.par_iter().map(exec).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parallel_matches_serial() {
        let base = RunConfig { population: 8, generations: 5, ..Default::default() };
        let other = RunConfig { problem: "rastrigin:n=3".into(), ..base.clone() };
        let configs = [base, other];
        let a = run_batch(&configs, &[1, 2, 3], 1).unwrap();
        let b = run_batch(&configs, &[1, 2, 3], 3).unwrap();
        assert_eq!(a.len(), 6);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!((x.config_index, x.seed), (y.config_index, y.seed));
            assert_eq!(x.result.as_ref().unwrap(), y.result.as_ref().unwrap());
        }
        assert!(run_batch(&[], &[1], 1).is_err());
    }
}
