mod common;

use mtoa::strategy::capture_depth;
use mtoa::tradeoff::*;
use mtoa::MtoaError;

const T: f64 = 1e7;

fn fairness_levels() -> Vec<f64> {
    (0..=40).map(|i| 0.9 + 0.099 * i as f64 / 40.0).collect()
}

fn best(grid: &SweepGrid, j: f64) -> Option<f64> {
    match best_under_fairness(grid, j) {
        Ok(p) => Some(p.throughput),
        Err(MtoaError::FairnessInfeasible { .. }) => None,
        Err(e) => panic!("{e}"),
    }
}

/// `better` reaches at least the throughput of `worse` wherever `worse` is feasible.
fn assert_dominates(better: &SweepGrid, worse: &SweepGrid, label: &str) {
    for j in fairness_levels() {
        let Some(w) = best(worse, j) else { continue };
        let b = best(better, j).unwrap_or_else(|| panic!("{label}: infeasible at J = {j}"));
        assert!(b >= w - 1e-9, "{label}: at J = {j}, {b} < {w}");
    }
}

#[test]
fn two_capture_stages_give_the_best_connection_free_tradeoff() {
    let two = SweepGrid::connection_free(100, T, vec![2]);
    for n_c in [0, 1, 3, 4] {
        let other = SweepGrid::connection_free(100, T, vec![n_c]);
        assert_dominates(&two, &other, &format!("n_C = 2 vs {n_c}"));
    }
}

#[test]
fn capture_free_gives_the_best_connection_based_tradeoff() {
    let mut q = log_space(1e-10, 1e-1, 200);
    q.push(0.01);
    let m = log_space_int(1, 1_000_000, 100);
    let family = |n_c: u32| SweepGrid {
        q_values: q.clone(),
        m_values: m.clone(),
        n_c_values: vec![n_c],
        horizon: T,
        nodes: 100,
    };
    for n_c in [1, 2, 3] {
        assert_dominates(&family(0), &family(n_c), &format!("n_C = 0 vs {n_c}"));
    }
}

#[test]
fn global_rewards_beat_local_rewards() {
    for n in [100usize, 1000] {
        let g = SweepGrid::connection_based(n, T, 1.0 / n as f64, vec![0]);
        let l = SweepGrid::connection_free(n, T, vec![2]);
        assert_dominates(&g, &l, &format!("n = {n}"));
    }
}

#[test]
fn larger_batches_trade_fairness_for_throughput() {
    let grid =
        SweepGrid { q_values: vec![0.01], m_values: vec![1, 10, 100], n_c_values: vec![0], horizon: T, nodes: 100 };
    let r = sweep_tradeoff(&grid).unwrap();
    assert_eq!(r.points.len(), 3);
    assert!(r.points.windows(2).all(|w| w[1].throughput > w[0].throughput && w[1].fairness < w[0].fairness));
    assert!((r.points[0].throughput - 0.3697).abs() < 1e-4);
    assert!((r.points[0].fairness - 0.99997).abs() < 1e-5);
}

#[test]
fn grid_frontier_equals_brute_force() {
    let grid = SweepGrid::connection_free(100, T, vec![0, 1, 2, 3]);
    let r = sweep_tradeoff(&grid).unwrap();
    let mut a = pareto_frontier(&r.points);
    let mut b = common::brute_force_frontier(&r.points);
    let key = |p: &TradeoffPoint| (p.fairness.to_bits(), p.throughput.to_bits(), p.params.n_capture);
    a.sort_by_key(key);
    b.sort_by_key(key);
    assert_eq!(a, b);
}

#[test]
fn mtoa_g_recommendation() {
    for n in [2usize, 10, 100] {
        assert_eq!(recommend_mtoa_g(n, T, 0.5).unwrap().null_actions, n - 1);
    }
    let r = recommend_mtoa_g(100, T, 0.99).unwrap();
    assert!((r.throughput - 0.998).abs() < 0.005, "{r:?}");
    assert!(r.fairness >= 0.99);
    // one more packet per batch breaks the floor
    let over =
        evaluate_point(TradeoffParams { n_capture: 0, m_batch: r.m_window + 1, q_noncapture: 0.01 }, 100, T).unwrap();
    assert!(over.fairness < 0.99);
}

#[test]
fn mtoa_l_recommendation() {
    let r = recommend_mtoa_l(100, T, 0.99).unwrap();
    assert_eq!((r.alpha, r.q_threshold), (0.9, 0.05));
    assert_eq!(capture_depth(r.alpha, r.q_threshold, 1.0).unwrap().finite(), Some(2));
    assert!((r.throughput - 0.915).abs() < 0.01, "{r:?}");
    assert!(r.fairness >= 0.99);
    let tighter = TradeoffParams { n_capture: 2, m_batch: 1, q_noncapture: 1.0 / (r.null_actions as f64 + 2.0) };
    assert!(evaluate_point(tighter, 100, T).unwrap().fairness < 0.99);
}
