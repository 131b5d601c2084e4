//! Network of nodes that follow a fixed access strategy.
//!
//! Each node keeps the stage of its head-of-line batch. On an unreserved slot
//! a node at stage `k` transmits with probability `q_k`; a lone transmitter
//! sends its first packet and holds the channel for the remaining `M - 1`
//! slots, after which its next batch starts at stage 0. Colliding nodes move
//! to `min(k + 1, K)`.

use rand::Rng;

use super::engine::{node_rngs, NodeRng};
use super::metrics::RunMetrics;
use crate::error::{MtoaError, Result};
use crate::strategy::AccessStrategy;

#[derive(Debug, Clone, PartialEq)]
pub struct FixedStrategyStats {
    pub metrics: RunMetrics,
    /// Fraction of node-slots at a non-capture stage that found the channel unreserved.
    pub beta_nc: Option<f64>,
    /// Success ratio of transmissions from capture stages.
    pub p_c: Option<f64>,
    /// Success ratio of transmissions from non-capture stages.
    pub p_nc: Option<f64>,
    pub capture_attempts: u64,
    pub noncapture_attempts: u64,
}

fn ratio(num: u64, den: u64) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

pub fn simulate_fixed_strategy(
    strategy: &AccessStrategy,
    nodes: usize,
    horizon: u64,
    seed: u64,
) -> Result<FixedStrategyStats> {
    strategy.validate()?;
    if nodes < 1 || horizon < 1 {
        return Err(MtoaError::Config("n and T must be at least 1".into()));
    }
    let k_max = strategy.k_cutoff();
    let n_c = strategy.n_capture as usize;
    let mut rngs: Vec<NodeRng> = node_rngs(seed, nodes);
    let mut stage = vec![0usize; nodes];
    let mut successes = vec![0u64; nodes];
    // (holder, slots still reserved)
    let mut reservation: Option<(usize, u64)> = None;
    let mut tx = Vec::with_capacity(nodes);
    let (mut nc_slots, mut nc_free) = (0u64, 0u64);
    let (mut c_att, mut c_succ, mut nc_att, mut nc_succ) = (0u64, 0u64, 0u64, 0u64);

    for _ in 0..horizon {
        let nc_waiting = stage.iter().filter(|&&k| k >= n_c).count() as u64;
        if let Some((holder, left)) = reservation {
            successes[holder] += 1;
            nc_slots += nc_waiting - u64::from(stage[holder] >= n_c);
            reservation = (left > 1).then(|| (holder, left - 1));
            continue;
        }
        nc_slots += nc_waiting;
        nc_free += nc_waiting;
        tx.clear();
        for (i, rng) in rngs.iter_mut().enumerate() {
            let q = strategy.q_schedule[stage[i]];
            if q >= 1.0 || rng.random::<f64>() < q {
                tx.push(i);
            }
        }
        let won = tx.len() == 1;
        for &i in &tx {
            if stage[i] < n_c {
                c_att += 1;
                c_succ += u64::from(won);
            } else {
                nc_att += 1;
                nc_succ += u64::from(won);
            }
        }
        if won {
            let i = tx[0];
            successes[i] += 1;
            stage[i] = 0;
            if strategy.m_batch > 1 {
                reservation = Some((i, strategy.m_batch - 1));
            }
        } else {
            for &i in &tx {
                stage[i] = (stage[i] + 1).min(k_max);
            }
        }
    }
    Ok(FixedStrategyStats {
        metrics: RunMetrics::from_successes(successes, horizon)?,
        beta_nc: ratio(nc_free, nc_slots),
        p_c: ratio(c_succ, c_att),
        p_nc: ratio(nc_succ, nc_att),
        capture_attempts: c_att,
        noncapture_attempts: nc_att,
    })
}
