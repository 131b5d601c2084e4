//! Monte-Carlo of a single node's service time under a given fixed point.
//!
//! Each visit to stage `k` waits a geometric number of slots for the channel
//! to be free and the node to transmit, then succeeds with `p^(k)`. A success
//! adds the `M - 1` remaining batch slots; a failure moves to `min(k + 1, K)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};
use serde::Serialize;

use super::fixed_point::FixedPoint;
use crate::error::{MtoaError, Result};
use crate::strategy::AccessStrategy;

pub const MIN_BATCHES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EmpiricalMoments {
    pub mean: f64,
    pub variance: f64,
    pub mean_se: f64,
    pub variance_se: f64,
    pub batches: usize,
}

impl EmpiricalMoments {
    pub fn from_samples(samples: &[f64]) -> Result<Self> {
        let n = samples.len();
        if n < 2 {
            return Err(MtoaError::Domain("need at least two samples".into()));
        }
        let nf = n as f64;
        let mean = samples.iter().sum::<f64>() / nf;
        let (mut m2, mut m4) = (0.0, 0.0);
        for &x in samples {
            let d = (x - mean) * (x - mean);
            m2 += d;
            m4 += d * d;
        }
        let variance = m2 / (nf - 1.0);
        let m4 = m4 / nf;
        let pop_var = m2 / nf;
        Ok(EmpiricalMoments {
            mean,
            variance,
            mean_se: (variance / nf).sqrt(),
            variance_se: ((m4 - pop_var * pop_var).max(0.0) / nf).sqrt(),
            batches: n,
        })
    }
}

pub fn hol_renewal_oracle(
    fp: &FixedPoint,
    strategy: &AccessStrategy,
    seed: u64,
    num_batches: usize,
) -> Result<EmpiricalMoments> {
    if num_batches < MIN_BATCHES {
        return Err(MtoaError::Config(format!("at least {MIN_BATCHES} batches are required")));
    }
    let k_max = strategy.k_cutoff();
    let mut waits = Vec::with_capacity(k_max + 1);
    let mut success = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let (beta, p) = fp.stage(strategy, k);
        let g = Geometric::new(beta * strategy.q_schedule[k])
            .map_err(|e| MtoaError::Numerical(format!("stage {k} wait: {e}")))?;
        waits.push(g);
        success.push(p);
    }
    let extra = strategy.m_batch as f64 - 1.0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples = Vec::with_capacity(num_batches);
    for _ in 0..num_batches {
        let mut k = 0;
        let mut d = 0.0;
        loop {
            d += waits[k].sample(&mut rng) as f64 + 1.0;
            if rng.random::<f64>() < success[k] {
                d += extra;
                break;
            }
            k = (k + 1).min(k_max);
        }
        samples.push(d);
    }
    EmpiricalMoments::from_samples(&samples)
}
