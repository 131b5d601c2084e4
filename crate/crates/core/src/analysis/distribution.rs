//! Limiting distribution of the HOL-batch state process.
//!
//! States are `T` (transmitting a batch) followed by the backoff stages
//! `B_0..B_K`. Index 0 of every vector is `T`, index `k + 1` is `B_k`.

use serde::Serialize;

use super::fixed_point::FixedPoint;
use crate::error::{MtoaError, Result};
use crate::strategy::AccessStrategy;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StateDistribution {
    /// Embedded-chain stationary probabilities.
    pub pi: Vec<f64>,
    /// Mean holding time of each state, in slots.
    pub tau: Vec<f64>,
    /// Long-run fraction of time spent in each state.
    pub pi_tilde: Vec<f64>,
}

impl StateDistribution {
    pub fn pi_t(&self) -> f64 {
        self.pi[0]
    }

    pub fn pi_b(&self, stage: usize) -> f64 {
        self.pi[stage + 1]
    }

    pub fn time_in_transmission(&self) -> f64 {
        self.pi_tilde[0]
    }
}

pub fn limiting_probabilities(fp: &FixedPoint, strategy: &AccessStrategy) -> Result<StateDistribution> {
    let k = strategy.k_cutoff();
    let (beta0, p0) = fp.stage(strategy, 0);
    let q0 = strategy.q_schedule[0];
    let mut pi = vec![0.0; k + 2];
    if k == 0 {
        let leave = beta0 * q0 * p0;
        if !(p0 > 0.0) {
            return Err(MtoaError::Numerical("backoff stage never succeeds".into()));
        }
        pi[0] = p0 / (p0 + 1.0 - leave);
        pi[1] = pi[0] * (1.0 - leave) / p0;
    } else {
        // survival[j] = prod_{i<j} (1 - p_i)
        let mut survival = vec![1.0; k + 1];
        for j in 1..=k {
            survival[j] = survival[j - 1] * (1.0 - fp.stage(strategy, j - 1).1);
        }
        let (_, p_k) = fp.stage(strategy, k);
        if !(p_k > 0.0) {
            return Err(MtoaError::Numerical("cutoff stage never succeeds".into()));
        }
        let middle: f64 = survival[1..k].iter().sum();
        pi[0] = 1.0 / (2.0 - beta0 * q0 + middle + survival[k] / p_k);
        pi[1] = (1.0 - beta0 * q0) * pi[0];
        for j in 1..k {
            pi[j + 1] = pi[0] * survival[j];
        }
        pi[k + 1] = pi[0] * survival[k] / p_k;
    }
    let mut tau = Vec::with_capacity(k + 2);
    tau.push(strategy.m_batch as f64);
    for j in 0..=k {
        tau.push(1.0 / (fp.stage(strategy, j).0 * strategy.q_schedule[j]));
    }
    let weights: Vec<f64> = pi.iter().zip(&tau).map(|(p, t)| p * t).collect();
    let total: f64 = weights.iter().sum();
    if !(total.is_finite() && total > 0.0) {
        return Err(MtoaError::Numerical(format!("state occupancy does not normalise (sum = {total})")));
    }
    let pi_tilde = weights.iter().map(|w| w / total).collect();
    Ok(StateDistribution { pi, tau, pi_tilde })
}
