//! Parameter recommendations for the two learning schemes.

use serde::Serialize;

use super::frontier::{max_throughput_under_fairness, pareto_frontier};
use super::sweep::{evaluate_point, refine_at_fairness, sweep_tradeoff, SweepGrid, TradeoffParams, TradeoffPoint};
use crate::error::{MtoaError, Result};
use crate::strategy::capture_depth;

pub const RECOMMENDED_ALPHA: f64 = 0.9;
/// Together with `α = 0.9` this yields a capture depth of 2.
pub const RECOMMENDED_Q_TH: f64 = 0.05;
pub const RECOMMENDED_CAPTURE: u32 = 2;
/// Largest reset window considered.
pub const M_MAX: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MtoaLRecommendation {
    pub alpha: f64,
    pub q_threshold: f64,
    pub null_actions: usize,
    pub throughput: f64,
    pub fairness: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MtoaGRecommendation {
    pub null_actions: usize,
    pub m_window: u64,
    pub throughput: f64,
    pub fairness: f64,
}

fn check_inputs(nodes: usize, horizon: f64) -> Result<()> {
    if nodes < 2 {
        return Err(MtoaError::Config("recommendations need n >= 2".into()));
    }
    if !(horizon >= 1.0) {
        return Err(MtoaError::Config("T must be at least 1".into()));
    }
    Ok(())
}

/// Best frontier point of a family with the fairness floor resolved exactly.
pub fn best_under_fairness(grid: &SweepGrid, j_min: f64) -> Result<TradeoffPoint> {
    let mut result = sweep_tradeoff(grid)?;
    let refined = refine_at_fairness(grid, &result, j_min);
    result.points.extend(refined);
    max_throughput_under_fairness(&pareto_frontier(&result.points), j_min)
}

/// `α = 0.9`, `q_th = 0.05` and the number of null actions whose transmission
/// probability `1/(L+1)` gives the most throughput at fairness `j_min`.
pub fn recommend_mtoa_l(nodes: usize, horizon: f64, j_min: f64) -> Result<MtoaLRecommendation> {
    check_inputs(nodes, horizon)?;
    debug_assert_eq!(capture_depth(RECOMMENDED_ALPHA, RECOMMENDED_Q_TH, 1.0)?.finite(), Some(RECOMMENDED_CAPTURE));
    let grid = SweepGrid::connection_free(nodes, horizon, vec![RECOMMENDED_CAPTURE]);
    let best = best_under_fairness(&grid, j_min)?;
    let q_star = best.params.q_noncapture;
    let mut l = ((1.0 / q_star - 1.0).floor() as usize).max(1);
    let eval = |l: usize| {
        let params =
            TradeoffParams { n_capture: RECOMMENDED_CAPTURE, m_batch: 1, q_noncapture: 1.0 / (l as f64 + 1.0) };
        evaluate_point(params, nodes, horizon)
    };
    let mut point = eval(l)?;
    while point.fairness < j_min {
        if l == 1 {
            return Err(MtoaError::FairnessInfeasible { j_min });
        }
        l -= 1;
        point = eval(l)?;
    }
    Ok(MtoaLRecommendation {
        alpha: RECOMMENDED_ALPHA,
        q_threshold: RECOMMENDED_Q_TH,
        null_actions: l,
        throughput: point.throughput,
        fairness: point.fairness,
    })
}

/// `L = n - 1` and the largest reset window meeting the fairness floor.
pub fn recommend_mtoa_g(nodes: usize, horizon: f64, j_min: f64) -> Result<MtoaGRecommendation> {
    check_inputs(nodes, horizon)?;
    let q = 1.0 / nodes as f64;
    let eval = |m: u64| evaluate_point(TradeoffParams { n_capture: 0, m_batch: m, q_noncapture: q }, nodes, horizon);
    let mut good = eval(1)?;
    if good.fairness < j_min {
        return Err(MtoaError::FairnessInfeasible { j_min });
    }
    let top = eval(M_MAX)?;
    if top.fairness >= j_min {
        good = top;
    } else {
        let mut bad = M_MAX;
        while bad - good.params.m_batch > 1 {
            let mid = good.params.m_batch.midpoint(bad);
            let p = eval(mid)?;
            if p.fairness >= j_min {
                good = p;
            } else {
                bad = mid;
            }
        }
    }
    Ok(MtoaGRecommendation {
        null_actions: nodes - 1,
        m_window: good.params.m_batch,
        throughput: good.throughput,
        fairness: good.fairness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_fairness_is_infeasible() {
        assert!(matches!(recommend_mtoa_g(100, 1e7, 1.0), Err(MtoaError::FairnessInfeasible { .. })));
        assert!(matches!(recommend_mtoa_l(100, 1e7, 1.0), Err(MtoaError::FairnessInfeasible { .. })));
    }

    #[test]
    fn unconstrained_window_hits_the_cap() {
        let r = recommend_mtoa_g(2, 1e7, 0.0).unwrap();
        assert_eq!((r.null_actions, r.m_window), (1, M_MAX));
    }

    #[test]
    fn mtoa_l_uses_two_capture_stages() {
        let r = recommend_mtoa_l(100, 1e7, 0.99).unwrap();
        assert_eq!(capture_depth(r.alpha, r.q_threshold, 1.0).unwrap().finite(), Some(2));
        assert!(r.fairness >= 0.99);
    }

    #[test]
    fn small_population_rejected() {
        assert!(matches!(recommend_mtoa_g(1, 1e7, 0.5), Err(MtoaError::Config(_))));
    }
}
