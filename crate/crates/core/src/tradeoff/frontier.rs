//! Pareto frontier of throughput-fairness points.

use std::cmp::Ordering;

use super::sweep::TradeoffPoint;
use crate::error::{MtoaError, Result};

/// `a` dominates `b`: at least as good on both axes, strictly better on one.
pub fn dominates(a: &TradeoffPoint, b: &TradeoffPoint) -> bool {
    (a.throughput >= b.throughput && a.fairness > b.fairness)
        || (a.throughput > b.throughput && a.fairness >= b.fairness)
}

fn output_order(a: &TradeoffPoint, b: &TradeoffPoint) -> Ordering {
    a.fairness
        .total_cmp(&b.fairness)
        .then(b.throughput.total_cmp(&a.throughput))
        .then(a.order_key().cmp(&b.order_key()))
        .then(a.source.cmp(&b.source))
        .then(a.refined.cmp(&b.refined))
}

/// Non-dominated subset sorted by fairness ascending. Exact ties are all kept.
pub fn pareto_frontier(points: &[TradeoffPoint]) -> Vec<TradeoffPoint> {
    let mut sorted: Vec<TradeoffPoint> =
        points.iter().filter(|p| p.throughput.is_finite() && p.fairness.is_finite()).copied().collect();
    sorted.sort_by(|a, b| b.throughput.total_cmp(&a.throughput).then(b.fairness.total_cmp(&a.fairness)));
    let mut frontier = Vec::new();
    let mut best = f64::NEG_INFINITY;
    let mut i = 0;
    while i < sorted.len() {
        let lambda = sorted[i].throughput;
        let top = sorted[i].fairness;
        let mut j = i;
        while j < sorted.len() && sorted[j].throughput == lambda {
            if sorted[j].fairness == top && top > best {
                frontier.push(sorted[j]);
            }
            j += 1;
        }
        best = best.max(top);
        i = j;
    }
    frontier.sort_by(output_order);
    frontier
}

/// Highest-throughput point with fairness at least `j_min`.
pub fn max_throughput_under_fairness(frontier: &[TradeoffPoint], j_min: f64) -> Result<TradeoffPoint> {
    frontier
        .iter()
        .filter(|p| p.fairness >= j_min)
        .max_by(|a, b| a.throughput.total_cmp(&b.throughput).then_with(|| output_order(b, a)))
        .copied()
        .ok_or(MtoaError::FairnessInfeasible { j_min })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tradeoff::{PointSource, TradeoffParams};

    fn pt(l: f64, j: f64) -> TradeoffPoint {
        TradeoffPoint {
            throughput: l,
            fairness: j,
            params: TradeoffParams { n_capture: 0, m_batch: 1, q_noncapture: 0.5 },
            source: PointSource::Analysis,
            refined: false,
        }
    }

    #[test]
    fn basics() {
        assert_eq!(pareto_frontier(&[pt(0.9, 0.9)]), vec![pt(0.9, 0.9)]);
        assert_eq!(pareto_frontier(&[pt(0.9, 0.9), pt(0.8, 0.8)]), vec![pt(0.9, 0.9)]);
        assert_eq!(pareto_frontier(&[pt(0.8, 0.9), pt(0.9, 0.9)]), vec![pt(0.9, 0.9)]);
        assert_eq!(pareto_frontier(&[pt(0.9, 0.8), pt(0.9, 0.9)]), vec![pt(0.9, 0.9)]);
        assert_eq!(pareto_frontier(&[pt(0.9, 0.9), pt(0.9, 0.9)]).len(), 2);
        assert_eq!(pareto_frontier(&[pt(0.5, 0.99), pt(0.9, 0.9)]), vec![pt(0.9, 0.9), pt(0.5, 0.99)]);
    }

    #[test]
    fn floor() {
        let f = pareto_frontier(&[pt(0.5, 0.99), pt(0.9, 0.9)]);
        assert_eq!(max_throughput_under_fairness(&f, 0.95).unwrap(), pt(0.5, 0.99));
        assert_eq!(max_throughput_under_fairness(&f, 0.0).unwrap(), pt(0.9, 0.9));
        assert!(matches!(max_throughput_under_fairness(&f, 0.999), Err(MtoaError::FairnessInfeasible { .. })));
    }
}
