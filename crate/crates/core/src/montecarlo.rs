//! Seeded Monte Carlo with replicate-indexed random streams.
//!
//! Replicate `r` always draws from ChaCha8 seeded with `seed` on stream `r`,
//! so estimates do not depend on how replicates are split across workers.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::summation::CompensatedSum;

pub fn replicate_rng(seed: u64, replicate: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(replicate);
    rng
}

/// Evaluate `f` once per replicate, returning values in replicate order.
pub fn replicate_values<F>(runs: u64, seed: u64, f: F) -> Vec<f64>
where
    F: Fn(&mut ChaCha8Rng, u64) -> f64 + Sync + Send,
{
    replicate_map(runs, seed, f)
}

/// Like [`replicate_values`] for any per-replicate output.
pub fn replicate_map<T, F>(runs: u64, seed: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(&mut ChaCha8Rng, u64) -> T + Sync + Send,
{
    let eval = |r: u64| {
        let mut rng = replicate_rng(seed, r);
        f(&mut rng, r)
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..runs).into_par_iter().map(eval).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..runs).map(eval).collect()
    }
}

/// How an estimate was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum EstimateMode {
    Exact,
    MonteCarlo { runs: u64 },
}

/// A point estimate with its standard error (zero for exact results).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
    pub mode: EstimateMode,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Self {
            value,
            stderr: 0.0,
            mode: EstimateMode::Exact,
        }
    }

    /// Sample mean and standard error of the mean (n - 1 denominator).
    pub fn from_samples(samples: &[f64]) -> Self {
        let n = samples.len();
        assert!(n > 0, "at least one replicate");
        let mean = samples.iter().copied().collect::<CompensatedSum>().value() / n as f64;
        let stderr = if n > 1 {
            let ss = samples
                .iter()
                .map(|x| (x - mean) * (x - mean))
                .collect::<CompensatedSum>()
                .value();
            (ss / (n - 1) as f64 / n as f64).sqrt()
        } else {
            0.0
        };
        Self {
            value: mean,
            stderr,
            mode: EstimateMode::MonteCarlo { runs: n as u64 },
        }
    }

    pub fn runs(&self) -> u64 {
        match self.mode {
            EstimateMode::Exact => 0,
            EstimateMode::MonteCarlo { runs } => runs,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.mode == EstimateMode::Exact
    }

    /// Shift the value, keeping the error and mode.
    pub fn offset(self, by: f64) -> Self {
        Self {
            value: self.value + by,
            ..self
        }
    }
}
