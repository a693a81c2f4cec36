//! Runtime and operation-count scaling of the embedding strategies.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::data::Dataset;
use crate::embed::{embed, EmbedConfig, OpCounts, Strategy};
use crate::error::Result;

/// `n` patterns drawn uniformly from the unit cube `[0, 1)^dim`.
pub fn uniform_dataset(n: usize, dim: usize, seed: u64) -> Result<Dataset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..n * dim).map(|_| rng.random::<f64>()).collect();
    Dataset::from_flat(n, dim, values)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub wall: Duration,
    pub total: OpCounts,
    /// Counted work of the final insertion, i.e. one step at `M = n − 1`.
    pub last_step_work: u64,
    pub final_dsre: f64,
}

pub fn bench(strategy: Strategy, k: usize, dim: usize, ns: &[usize], seed: u64) -> Result<Vec<BenchRow>> {
    ns.iter()
        .map(|&n| {
            let data = uniform_dataset(n, dim, seed)?;
            let start = Instant::now();
            let result = embed(&data, &EmbedConfig::new(k, strategy))?;
            let wall = start.elapsed();
            Ok(BenchRow {
                n,
                wall,
                total: result.total_ops(),
                last_step_work: result.trace.last().map_or(0, |r| r.ops.work),
                final_dsre: result.final_dsre.value(),
            })
        })
        .collect()
}
