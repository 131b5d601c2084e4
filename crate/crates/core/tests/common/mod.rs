#![allow(dead_code)]

pub mod props;

use mtoa::tradeoff::TradeoffPoint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Straight-line, dense re-implementation of both learning algorithms.
pub struct ReferenceNetwork {
    pub global: bool,
    pub alpha: f64,
    pub q_th: f64,
    pub window: Option<u64>,
    pub q: Vec<Vec<f64>>,
    pub w: Vec<u64>,
    rngs: Vec<ChaCha8Rng>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceSlot {
    pub actions: Vec<usize>,
    pub transmitters: Vec<usize>,
    pub winner: Option<usize>,
}

impl ReferenceNetwork {
    pub fn new(global: bool, n: usize, l: usize, alpha: f64, q_th: f64, window: Option<u64>, seed: u64) -> Self {
        let rngs = (0..n)
            .map(|i| {
                let mut r = ChaCha8Rng::seed_from_u64(seed);
                r.set_stream(i as u64);
                r
            })
            .collect();
        ReferenceNetwork { global, alpha, q_th, window, q: vec![vec![0.0; l + 1]; n], w: vec![0; n], rngs }
    }

    #[allow(clippy::needless_range_loop)]
    pub fn step(&mut self) -> ReferenceSlot {
        let n = self.q.len();
        let mut actions = Vec::new();
        for i in 0..n {
            let row = &self.q[i];
            let mut best = row[0];
            for &v in row.iter() {
                if v > best {
                    best = v;
                }
            }
            let mut tied = Vec::new();
            for (a, &v) in row.iter().enumerate() {
                if v == best {
                    tied.push(a);
                }
            }
            let a = if tied.len() > 1 { tied[self.rngs[i].random_range(0..tied.len())] } else { tied[0] };
            actions.push(a);
        }
        let transmitters: Vec<usize> = (0..n).filter(|&i| actions[i] == 0).collect();
        let winner = if transmitters.len() == 1 { Some(transmitters[0]) } else { None };
        for i in 0..n {
            let a = actions[i];
            let r = if self.global { winner.is_some() } else { winner == Some(i) };
            let r = if r { 1.0 } else { 0.0 };
            let old = self.q[i][a];
            let mut new = old + self.alpha * (r - old);
            if self.global {
                if new > 0.0 {
                    self.w[i] += 1;
                    if Some(self.w[i]) == self.window {
                        self.w[i] = 0;
                        new = 0.0;
                    }
                }
            } else if new <= self.q_th {
                new = 0.0;
            }
            self.q[i][a] = new;
        }
        ReferenceSlot { actions, transmitters, winner }
    }
}

/// Pairwise dominance filter.
pub fn brute_force_frontier(points: &[TradeoffPoint]) -> Vec<TradeoffPoint> {
    points
        .iter()
        .filter(|p| {
            !points.iter().any(|o| {
                (o.throughput >= p.throughput && o.fairness > p.fairness)
                    || (o.throughput > p.throughput && o.fairness >= p.fairness)
            })
        })
        .copied()
        .collect()
}

/// Jain's index written directly from its definition.
pub fn jain_direct(x: &[f64]) -> f64 {
    let s: f64 = x.iter().sum();
    let s2: f64 = x.iter().map(|v| v * v).sum();
    s * s / (x.len() as f64 * s2)
}

/// Best throughput with fairness at least `j` among `points`.
pub fn best_at(points: &[TradeoffPoint], j: f64) -> Option<f64> {
    points
        .iter()
        .filter(|p| p.fairness >= j)
        .map(|p| p.throughput)
        .fold(None, |m, v| Some(m.map_or(v, |m: f64| m.max(v))))
}

/// Runs the library network and the reference side by side and reports the
/// first slot where actions, channel result, Q rows or window counters differ.
#[allow(clippy::too_many_arguments)]
pub fn check_trace(
    global: bool,
    n: usize,
    l: usize,
    alpha: f64,
    q_th: f64,
    window: Option<u64>,
    horizon: u64,
    seed: u64,
) -> Result<(), String> {
    use mtoa::sim::{ChannelResult, Network, NetworkConfig, ResetWindow};
    let cfg = if global {
        let w = window.map_or(ResetWindow::Unbounded, ResetWindow::Finite);
        NetworkConfig::mtoa_g(n, horizon, l, alpha, w, seed)
    } else {
        NetworkConfig::mtoa_l(n, horizon, l, alpha, q_th, seed)
    };
    let mut net = Network::new(cfg).map_err(|e| e.to_string())?;
    let mut reference = ReferenceNetwork::new(global, n, l, alpha, q_th, window, seed);
    for t in 0..horizon {
        let got = net.step_traced().map_err(|e| e.to_string())?;
        let want = reference.step();
        let want_result = match (want.winner, want.transmitters.len()) {
            (Some(i), _) => ChannelResult::Success(i),
            (None, 0) => ChannelResult::Idle,
            _ => ChannelResult::Collision,
        };
        if got.actions != want.actions || got.transmitters != want.transmitters || got.result != want_result {
            return Err(format!(
                "slot {t}: got {:?}/{:?}, want {:?}/{want_result:?}",
                got.actions, got.result, want.actions
            ));
        }
        for (i, agent) in net.agents().iter().enumerate() {
            if agent.q_row.to_dense() != reference.q[i] {
                return Err(format!("slot {t} node {i}: Q {:?} vs {:?}", agent.q_row.to_dense(), reference.q[i]));
            }
            if global && agent.w_counter != reference.w[i] {
                return Err(format!("slot {t} node {i}: W {} vs {}", agent.w_counter, reference.w[i]));
            }
        }
    }
    Ok(())
}

/// Small random configuration for trace comparison.
pub fn trace_config() -> impl proptest::strategy::Strategy<Value = (bool, usize, usize, f64, f64, Option<u64>, u64, u64)>
{
    use proptest::prelude::*;
    (
        any::<bool>(),
        1usize..=4,
        1usize..=6,
        prop_oneof![Just(1.0), Just(0.5), 0.05f64..1.0],
        prop_oneof![Just(0.0), Just(1.0), 0.0f64..1.0],
        prop_oneof![Just(None), (1u64..=8).prop_map(Some)],
        1u64..=100,
        any::<u64>(),
    )
}
