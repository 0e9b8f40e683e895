//! Seeded, parallel Monte Carlo estimation.
//!
//! Samples are split evenly across `workers`; worker `w` draws from
//! `ChaCha8Rng::seed_from_u64(seed)` on stream `w`, so results depend only
//! on `(seed, workers, samples)`. Partial tallies are merged in worker order.

mod accumulator;
mod experiments;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use accumulator::{welford_merge, Accumulator, Estimate};
pub use experiments::{
    compare_laws, draw_subset, geometric_law_m4, geometric_swap_location_pmfs, mc_corollary2,
    mc_subnet_swap_expectation, mc_subnet_swap_profile, subnet_law_m4, subnet_swap_profile,
    EmpiricalLaw, LawComparison,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum McError {
    #[error("precondition violated: {0}")]
    Precondition(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct McConfig {
    pub samples: u64,
    pub seed: u64,
    pub workers: usize,
}

impl McConfig {
    pub fn new(samples: u64, seed: u64, workers: usize) -> Self {
        McConfig {
            samples,
            seed,
            workers,
        }
    }

    fn check(&self) -> Result<(), McError> {
        if self.samples == 0 {
            return Err(McError::Precondition("samples must be >= 1".into()));
        }
        if self.workers == 0 {
            return Err(McError::Precondition("workers must be >= 1".into()));
        }
        Ok(())
    }

    /// Number of samples handled by worker `w`.
    fn share(&self, w: usize) -> u64 {
        let workers = self.workers as u64;
        self.samples / workers + u64::from((w as u64) < self.samples % workers)
    }
}

/// The random source of worker `w`.
pub fn worker_rng(seed: u64, worker: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(worker as u64);
    rng
}

/// Runs `visit` once per sample, each worker folding into its own tally,
/// and merges the tallies in worker order.
pub fn run_tally<T: Send>(
    cfg: &McConfig,
    init: impl Fn() -> T + Sync,
    visit: impl Fn(&mut T, &mut ChaCha8Rng) + Sync,
    merge: impl Fn(T, T) -> T,
) -> Result<T, McError> {
    cfg.check()?;
    let parts: Vec<T> = (0..cfg.workers)
        .into_par_iter()
        .map(|w| {
            let mut rng = worker_rng(cfg.seed, w);
            let mut acc = init();
            for _ in 0..cfg.share(w) {
                visit(&mut acc, &mut rng);
            }
            acc
        })
        .collect();
    Ok(parts.into_iter().fold(init(), merge))
}

/// Mean and variance of `sample` over `cfg.samples` draws.
pub fn run_accumulate(
    cfg: &McConfig,
    sample: impl Fn(&mut ChaCha8Rng) -> f64 + Sync,
) -> Result<Accumulator, McError> {
    run_tally(
        cfg,
        Accumulator::new,
        |acc, rng| acc.push(sample(rng)),
        |a, b| welford_merge(&a, &b),
    )
}
