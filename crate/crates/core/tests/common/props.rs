//! Property checks shared by the property suite and the acceptance report.

use mtoa::analysis::{limiting_probabilities, solve_fixed_point};
use mtoa::harness::{read_csv, to_csv_string, ReportRow, RowSource, RowStatus};
use mtoa::sim::{jain_index, ChannelResult, Network, NetworkConfig, ResetWindow, Scheme};
use mtoa::strategy::AccessStrategy;
use mtoa::tradeoff::{dominates, pareto_frontier, PointSource, TradeoffParams, TradeoffPoint};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use super::{brute_force_frontier, jain_direct, trace_config};

pub const CASES: u32 = 1000;

pub fn config() -> ProptestConfig {
    ProptestConfig { failure_persistence: None, ..ProptestConfig::with_cases(CASES) }
}

pub type Trace = (bool, usize, usize, f64, f64, Option<u64>, u64, u64);

pub fn traces() -> impl Strategy<Value = Trace> {
    trace_config()
}

fn network((global, n, l, alpha, q_th, window, t, seed): Trace) -> Network {
    let cfg = if global {
        NetworkConfig::mtoa_g(n, t, l, alpha, window.map_or(ResetWindow::Unbounded, ResetWindow::Finite), seed)
    } else {
        NetworkConfig::mtoa_l(n, t, l, alpha, q_th, seed)
    };
    Network::new(cfg).unwrap()
}

/// Every Q entry stays in [0, 1].
pub fn q_in_unit_interval(trace: Trace) -> Result<(), TestCaseError> {
    let mut net = network(trace);
    for _ in 0..trace.6 {
        net.step().unwrap();
        for a in net.agents() {
            for v in a.q_row.to_dense() {
                prop_assert!((0.0..=1.0).contains(&v), "Q = {}", v);
            }
        }
    }
    Ok(())
}

/// At most one success per slot, consistent with the transmitter set and rewards.
pub fn one_success_per_slot(trace: Trace) -> Result<(), TestCaseError> {
    let mut net = network(trace);
    let mut total = 0u64;
    for _ in 0..trace.6 {
        let out = net.step_traced().unwrap();
        let success = matches!(out.result, ChannelResult::Success(_));
        prop_assert_eq!(success, out.transmitters.len() == 1);
        total += u64::from(success);
        let rewards = out.rewards();
        if net.config().scheme == Scheme::MtoaL {
            prop_assert!(rewards.iter().filter(|&&r| r == 1).count() <= 1);
        } else {
            prop_assert!(rewards.iter().all(|&r| r == u8::from(success)));
        }
    }
    prop_assert_eq!(net.successes().iter().sum::<u64>(), total);
    prop_assert!(total <= trace.6);
    Ok(())
}

pub fn rates() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(prop_oneof![Just(0.0), 0.0f64..1.0], 1..50)
        .prop_filter("not all zero", |v| v.iter().any(|&x| x > 0.0))
}

/// Jain's index lies in [1/n, 1] and matches its definition.
pub fn jain_bounds(x: Vec<f64>) -> Result<(), TestCaseError> {
    let j = jain_index(&x).unwrap();
    let n = x.len() as f64;
    prop_assert!(j >= 1.0 / n - 1e-12 && j <= 1.0, "J = {}", j);
    prop_assert!((j - jain_direct(&x)).abs() < 1e-12);
    Ok(())
}

pub fn strategies() -> impl Strategy<Value = (AccessStrategy, usize)> {
    (1u64..=1000, 0u32..=3, 0usize..=3, prop::collection::vec(-4.0f64..0.0, 4), 1usize..=300).prop_map(
        |(m, n_c, extra, logs, n)| {
            let mut tail: Vec<f64> = logs[..=extra].iter().map(|l| 10f64.powf(*l)).collect();
            tail.sort_by(|a, b| b.total_cmp(a));
            let mut q = vec![1.0; n_c as usize];
            q.extend(tail);
            (AccessStrategy::new(m, n_c, q).unwrap(), n)
        },
    )
}

/// Stationary probabilities sum to one and the fixed point satisfies its equations.
pub fn distribution_normalised((s, n): (AccessStrategy, usize)) -> Result<(), TestCaseError> {
    let Ok(fp) = solve_fixed_point(&s, n) else {
        return Err(TestCaseError::reject("no unique fixed point"));
    };
    for r in fp.residuals(&s) {
        prop_assert!(r < 1e-10, "residuals {:?}", fp.residuals(&s));
    }
    prop_assert!(fp.p_nc <= fp.p_c * (1.0 + 1e-12));
    let d = limiting_probabilities(&fp, &s).unwrap();
    prop_assert!((d.pi.iter().sum::<f64>() - 1.0).abs() < 1e-12, "pi {:?}", d.pi);
    prop_assert!((d.pi_tilde.iter().sum::<f64>() - 1.0).abs() < 1e-12, "pi~ {:?}", d.pi_tilde);
    Ok(())
}

pub fn point_sets() -> impl Strategy<Value = Vec<TradeoffPoint>> {
    prop::collection::vec((1u32..=20, 1u32..=20, 0u32..4), 0..60).prop_map(|v| {
        v.into_iter()
            .map(|(l, j, c)| TradeoffPoint {
                throughput: l as f64 / 20.0,
                fairness: j as f64 / 20.0,
                params: TradeoffParams { n_capture: c, m_batch: 1, q_noncapture: 0.5 },
                source: PointSource::Analysis,
                refined: false,
            })
            .collect()
    })
}

fn sorted(mut v: Vec<TradeoffPoint>) -> Vec<TradeoffPoint> {
    v.sort_by(|a, b| {
        a.fairness
            .total_cmp(&b.fairness)
            .then(a.throughput.total_cmp(&b.throughput))
            .then(a.params.n_capture.cmp(&b.params.n_capture))
    });
    v
}

/// Frontier equals the pairwise filter, is non-dominated and ignores input order.
pub fn frontier_matches_brute_force(points: Vec<TradeoffPoint>) -> Result<(), TestCaseError> {
    let f = pareto_frontier(&points);
    for a in &f {
        for b in &f {
            prop_assert!(!dominates(a, b));
        }
    }
    prop_assert!(f.windows(2).all(|w| w[0].fairness <= w[1].fairness));
    prop_assert_eq!(sorted(f.clone()), sorted(brute_force_frontier(&points)));
    let mut reversed = points.clone();
    reversed.reverse();
    prop_assert_eq!(pareto_frontier(&reversed), f);
    Ok(())
}

pub fn rows() -> impl Strategy<Value = Vec<ReportRow>> {
    let row = (
        (prop::option::of(prop_oneof![Just(Scheme::MtoaL), Just(Scheme::MtoaG)]), 1usize..1000, 1u64..10_000_000),
        (prop::option::of(any::<u64>()), prop::option::of(1usize..10_000), prop::option::of(0.0f64..=1.0)),
        (
            prop::option::of(1u64..1_000_000),
            prop::option::of(0u32..5),
            prop::option::of(any::<f64>().prop_filter("finite", |x| x.is_finite())),
        ),
        (
            any::<bool>(),
            prop_oneof![Just(RowStatus::Ok), Just(RowStatus::Mean), Just(RowStatus::Failed)],
            "[a-z ,\"]{0,12}",
        ),
    )
        .prop_map(|((scheme, n, t), (seed, l, alpha), (m, n_c, val), (sim, status, note))| ReportRow {
            scheme,
            n,
            horizon: t,
            seed,
            null_actions: l,
            alpha,
            q_th: alpha.map(|a| a / 3.0),
            m_window: m.map(|m| m.to_string()),
            n_capture: n_c,
            q_noncapture: alpha.map(|a| a * 1e-7),
            lambda_out: val,
            jain: val.map(|v| v.abs().sqrt()),
            source: if sim { RowSource::Sim } else { RowSource::Analysis },
            rel_error: val.map(|v| v / 7.0),
            rel_error_jain: None,
            status,
            lambda_se: alpha,
            jain_se: None,
            note,
        });
    prop::collection::vec(row, 0..8)
}

/// CSV output is byte-identical across emissions and parses back to the same rows.
pub fn csv_round_trip(rows: Vec<ReportRow>) -> Result<(), TestCaseError> {
    let a = to_csv_string(&rows).unwrap();
    let b = to_csv_string(&rows.clone()).unwrap();
    prop_assert_eq!(&a, &b);
    prop_assert!(!a.contains('\r'));
    prop_assert_eq!(read_csv(a.as_bytes()).unwrap(), rows);
    Ok(())
}
