//! Analytical evaluation of strategy families over parameter grids.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::analysis::analyze_strategy;
use crate::error::{MtoaError, Result};
use crate::strategy::AccessStrategy;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointSource {
    Analysis,
    Simulation,
}

/// Parameters of a uniform-backoff strategy (`K = n_C`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TradeoffParams {
    pub n_capture: u32,
    pub m_batch: u64,
    pub q_noncapture: f64,
}

impl TradeoffParams {
    pub fn strategy(&self) -> Result<AccessStrategy> {
        AccessStrategy::uniform_backoff(self.m_batch, self.n_capture, self.q_noncapture)
    }

    pub fn k_cutoff(&self) -> u32 {
        self.n_capture
    }

    fn order_key(&self) -> (u32, u64, u64) {
        (self.n_capture, self.m_batch, self.q_noncapture.to_bits())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TradeoffPoint {
    pub throughput: f64,
    pub fairness: f64,
    pub params: TradeoffParams,
    pub source: PointSource,
    /// Added by bisection between grid cells rather than taken from the grid.
    pub refined: bool,
}

impl TradeoffPoint {
    pub(crate) fn order_key(&self) -> (u32, u64, u64) {
        self.params.order_key()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepFailure {
    pub params: TradeoffParams,
    pub error: String,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct SweepResult {
    pub points: Vec<TradeoffPoint>,
    pub failures: Vec<SweepFailure>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub q_values: Vec<f64>,
    pub m_values: Vec<u64>,
    pub n_c_values: Vec<u32>,
    /// Fairness horizon `T` in slots.
    pub horizon: f64,
    pub nodes: usize,
}

pub const DEFAULT_Q_POINTS: usize = 200;
pub const DEFAULT_M_POINTS: usize = 100;

/// `count` log-spaced values in `[lo, hi]`.
pub fn log_space(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..count)
                .map(|i| {
                    if i == 0 {
                        lo
                    } else if i == count - 1 {
                        hi
                    } else {
                        (a + (b - a) * i as f64 / (count - 1) as f64).exp()
                    }
                })
                .collect()
        }
    }
}

/// Log-spaced integers in `[lo, hi]`, rounded and deduplicated.
pub fn log_space_int(lo: u64, hi: u64, count: usize) -> Vec<u64> {
    let mut v: Vec<u64> = log_space(lo as f64, hi as f64, count).into_iter().map(|x| x.round() as u64).collect();
    v.dedup();
    v
}

impl SweepGrid {
    /// Connection-free family: `M = 1`, `q` swept on the default grid.
    pub fn connection_free(nodes: usize, horizon: f64, n_c_values: Vec<u32>) -> Self {
        SweepGrid { q_values: log_space(1e-10, 1e-1, DEFAULT_Q_POINTS), m_values: vec![1], n_c_values, horizon, nodes }
    }

    /// Connection-based family: `q` fixed, `M` swept on the default grid.
    pub fn connection_based(nodes: usize, horizon: f64, q: f64, n_c_values: Vec<u32>) -> Self {
        SweepGrid {
            q_values: vec![q],
            m_values: log_space_int(1, 1_000_000, DEFAULT_M_POINTS),
            n_c_values,
            horizon,
            nodes,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes < 1 {
            return Err(MtoaError::Config("n must be at least 1".into()));
        }
        if !(self.horizon >= 1.0) {
            return Err(MtoaError::Config("T must be at least 1".into()));
        }
        if let Some(q) = self.q_values.iter().find(|q| !(**q > 0.0 && **q <= 1.0)) {
            return Err(MtoaError::Config(format!("grid q = {q} outside (0,1]")));
        }
        if self.m_values.contains(&0) {
            return Err(MtoaError::Config("grid M values must be at least 1".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.q_values.len() * self.m_values.len() * self.n_c_values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Throughput and fairness of one strategy.
pub fn evaluate_point(params: TradeoffParams, nodes: usize, horizon: f64) -> Result<TradeoffPoint> {
    let a = analyze_strategy(&params.strategy()?, nodes, horizon)?;
    let (throughput, fairness) = (a.throughput, a.fairness);
    if !(throughput > 0.0) {
        return Err(MtoaError::Numerical("zero throughput".into()));
    }
    Ok(TradeoffPoint { throughput, fairness, params, source: PointSource::Analysis, refined: false })
}

/// Evaluates every cell, keeping failed cells in [`SweepResult::failures`].
pub fn sweep_tradeoff(grid: &SweepGrid) -> Result<SweepResult> {
    grid.validate()?;
    let mut out = SweepResult::default();
    for &n_capture in &grid.n_c_values {
        for &m_batch in &grid.m_values {
            for &q in &grid.q_values {
                let params = TradeoffParams { n_capture, m_batch, q_noncapture: q };
                match evaluate_point(params, grid.nodes, grid.horizon) {
                    Ok(p) => out.points.push(p),
                    Err(e) => out.failures.push(SweepFailure { params, error: e.to_string() }),
                }
            }
        }
    }
    Ok(out)
}

const BISECTION_STEPS: usize = 100;

/// Adds, for every grid line crossing the fairness floor, the feasible point
/// closest to the floor found by bisection.
///
/// Lines over `q` are bisected in log space, lines over `M` over integers.
pub fn refine_at_fairness(grid: &SweepGrid, result: &SweepResult, j_min: f64) -> Vec<TradeoffPoint> {
    let (n, t) = (grid.nodes, grid.horizon);
    let eval = |p: TradeoffParams| evaluate_point(p, n, t).ok();
    let feasible = |p: &TradeoffPoint| p.fairness >= j_min;
    let mut added = Vec::new();
    let mut q_sorted = grid.q_values.clone();
    q_sorted.sort_by(f64::total_cmp);
    q_sorted.dedup();
    let mut m_sorted = grid.m_values.clone();
    m_sorted.sort_unstable();
    m_sorted.dedup();
    let known: HashMap<(u32, u64, u64), TradeoffPoint> = result.points.iter().map(|p| (p.order_key(), *p)).collect();
    let lookup = |p: TradeoffParams| known.get(&p.order_key()).copied().or_else(|| eval(p));
    for &n_capture in &grid.n_c_values {
        for &m_batch in &m_sorted {
            for w in q_sorted.windows(2) {
                let mk = |q| TradeoffParams { n_capture, m_batch, q_noncapture: q };
                let (Some(a), Some(b)) = (lookup(mk(w[0])), lookup(mk(w[1]))) else { continue };
                if feasible(&a) == feasible(&b) {
                    continue;
                }
                let (mut good, mut bad) = if feasible(&a) { (a, w[1].ln()) } else { (b, w[0].ln()) };
                let mut good_x = good.params.q_noncapture.ln();
                for _ in 0..BISECTION_STEPS {
                    let mid = 0.5 * (good_x + bad);
                    if mid == good_x || mid == bad {
                        break;
                    }
                    match eval(mk(mid.exp())) {
                        Some(p) if feasible(&p) => {
                            good = p;
                            good_x = mid;
                        }
                        _ => bad = mid,
                    }
                }
                added.push(TradeoffPoint { refined: true, ..good });
            }
        }
        for &q in &q_sorted {
            for w in m_sorted.windows(2) {
                let mk = |m| TradeoffParams { n_capture, m_batch: m, q_noncapture: q };
                let (Some(a), Some(b)) = (lookup(mk(w[0])), lookup(mk(w[1]))) else { continue };
                if feasible(&a) == feasible(&b) {
                    continue;
                }
                let (mut good, mut bad) = if feasible(&a) { (a, w[1]) } else { (b, w[0]) };
                while good.params.m_batch.abs_diff(bad) > 1 {
                    let mid = good.params.m_batch.midpoint(bad);
                    match eval(mk(mid)) {
                        Some(p) if feasible(&p) => good = p,
                        _ => bad = mid,
                    }
                }
                added.push(TradeoffPoint { refined: true, ..good });
            }
        }
    }
    added
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids_have_expected_shape() {
        let q = log_space(1e-10, 1e-1, 200);
        assert_eq!(q.len(), 200);
        assert_eq!((q[0], q[199]), (1e-10, 1e-1));
        let m = log_space_int(1, 1_000_000, 100);
        assert_eq!((m[0], *m.last().unwrap()), (1, 1_000_000));
        assert!(m.windows(2).all(|w| w[0] < w[1]));
        assert!(m.len() < 100);
    }

    #[test]
    fn empty_grid_gives_no_points() {
        let grid = SweepGrid { q_values: vec![], m_values: vec![1], n_c_values: vec![0], horizon: 1e7, nodes: 100 };
        assert!(sweep_tradeoff(&grid).unwrap().points.is_empty());
    }

    #[test]
    fn single_cell() {
        let grid = SweepGrid { q_values: vec![0.01], m_values: vec![1], n_c_values: vec![0], horizon: 1e7, nodes: 100 };
        let r = sweep_tradeoff(&grid).unwrap();
        assert_eq!(r.points.len(), 1);
        assert!((r.points[0].throughput - 0.3697).abs() < 1e-4);
        assert!((r.points[0].fairness - 0.99997).abs() < 1e-5);
    }

    #[test]
    fn failures_are_reported() {
        let grid =
            SweepGrid { q_values: vec![1.0, 0.5], m_values: vec![1], n_c_values: vec![0], horizon: 1e7, nodes: 3 };
        let r = sweep_tradeoff(&grid).unwrap();
        assert_eq!(r.points.len(), 1);
        assert_eq!(r.failures.len(), 1);
        assert_eq!(r.failures[0].params.q_noncapture, 1.0);
    }

    #[test]
    fn refinement_lands_on_the_floor() {
        let grid = SweepGrid::connection_free(100, 1e7, vec![2]);
        let r = sweep_tradeoff(&grid).unwrap();
        let refined = refine_at_fairness(&grid, &r, 0.99);
        assert!(!refined.is_empty());
        for p in refined {
            assert!(p.fairness >= 0.99 && p.fairness < 0.99 + 1e-9, "{p:?}");
        }
    }
}
