//! Steady-state success and reservation probabilities of HOL batches.
//!
//! A batch in a capture stage (`k < n_C`) always sees an unreserved channel
//! and succeeds with `p_C = (1 - q̃)^(n-1)`. Non-capture stages see a reserved
//! channel with probability `1 - β_C̄` and succeed with the smaller `p_C̄`.
//! All quantities are driven by the average non-capture transmission
//! probability `q̃`, which itself depends on `p_C̄` once `K > n_C`.

use serde::Serialize;

use crate::error::{MtoaError, Result};
use crate::strategy::AccessStrategy;

/// Damping factor of the fixed-point iteration.
pub const DAMPING: f64 = 0.5;
/// Relative tolerance on `|f(q̃) - q̃| / q̃`.
pub const TOLERANCE: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 100_000;

/// Converged steady-state tuple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FixedPoint {
    pub nodes: usize,
    pub beta_c: f64,
    pub beta_nc: f64,
    pub p_c: f64,
    pub p_nc: f64,
    pub q_tilde: f64,
    /// `1 - p_C`, kept separately because it is tiny for small `q̃`.
    pub one_minus_p_c: f64,
    /// Relative residual of the `q̃` equation (0 for the closed form).
    pub residual: f64,
    pub iterations: usize,
}

/// Values of `p_C`, `1 - p_C`, `p_C̄` and `β_C̄` for a given `q̃`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Evaluated {
    pub p_c: f64,
    pub one_minus_p_c: f64,
    pub p_nc: f64,
    pub beta_nc: f64,
}

pub(crate) fn evaluate(nodes: usize, n_capture: u32, m_batch: u64, q_tilde: f64) -> Evaluated {
    if nodes == 1 {
        return Evaluated { p_c: 1.0, one_minus_p_c: 0.0, p_nc: 1.0, beta_nc: 1.0 };
    }
    let others = (nodes - 1) as f64;
    let log_p_c = others * (-q_tilde).ln_1p();
    let p_c = log_p_c.exp();
    let one_minus_p_c = -log_p_c.exp_m1();
    let capture_weight = one_minus_p_c.powi(n_capture as i32);
    // p_C̄ = p_C a / (a + (n-1) q̃ (1 - a)) with a = (1 - p_C)^{n_C}
    let denom = capture_weight + others * q_tilde * (1.0 - capture_weight);
    let p_nc = if n_capture == 0 { p_c } else { p_c * capture_weight / denom };
    // (n-1)(M-1) p_C̄ q̃ / a, written without dividing by a
    let reserve = others * (m_batch as f64 - 1.0) * q_tilde * p_c / denom;
    Evaluated { p_c, one_minus_p_c, p_nc, beta_nc: 1.0 / (1.0 + reserve) }
}

/// Average transmission probability over non-capture stages given `p_C̄`.
pub(crate) fn harmonic_q(strategy: &AccessStrategy, p_nc: f64) -> f64 {
    let nc = strategy.n_capture as usize;
    let k = strategy.k_cutoff();
    let q = &strategy.q_schedule;
    let mut inv = (1.0 - p_nc).powi((k - nc) as i32) / q[k];
    for (j, &qj) in q.iter().enumerate().take(k).skip(nc) {
        inv += p_nc * (1.0 - p_nc).powi((j - nc) as i32) / qj;
    }
    1.0 / inv
}

fn finish(
    strategy: &AccessStrategy,
    nodes: usize,
    q_tilde: f64,
    residual: f64,
    iterations: usize,
) -> Result<FixedPoint> {
    let e = evaluate(nodes, strategy.n_capture, strategy.m_batch, q_tilde);
    if !(e.p_c >= f64::MIN_POSITIVE) {
        return Err(MtoaError::Numerical(format!(
            "no contention can succeed: p_C = 0 at q̃ = {q_tilde} with n = {nodes}"
        )));
    }
    if !(e.p_nc >= f64::MIN_POSITIVE && e.beta_nc >= f64::MIN_POSITIVE) {
        return Err(MtoaError::Numerical(format!("non-capture success probability underflows at q̃ = {q_tilde:e}")));
    }
    Ok(FixedPoint {
        nodes,
        beta_c: 1.0,
        beta_nc: e.beta_nc,
        p_c: e.p_c,
        p_nc: e.p_nc,
        q_tilde,
        one_minus_p_c: e.one_minus_p_c,
        residual,
        iterations,
    })
}

fn iterate(strategy: &AccessStrategy, nodes: usize, start: f64) -> Result<(f64, f64, usize)> {
    let mut qt = start;
    let mut residual = f64::INFINITY;
    for it in 1..=MAX_ITERATIONS {
        let e = evaluate(nodes, strategy.n_capture, strategy.m_batch, qt);
        let next = harmonic_q(strategy, e.p_nc);
        residual = (next - qt).abs() / qt;
        if !residual.is_finite() {
            break;
        }
        if residual < TOLERANCE {
            return Ok((next, residual, it));
        }
        qt = (1.0 - DAMPING) * qt + DAMPING * next;
    }
    Err(MtoaError::NonConvergence { iterations: MAX_ITERATIONS, residual })
}

/// Solves the steady-state equations for `nodes` saturated nodes.
///
/// With `K = n_C` the average probability is exactly `q_{n_C}` and everything
/// is closed-form. Otherwise a damped iteration is run from both `q_K` and
/// `q_{n_C}`; disagreement between the two is reported as an error.
pub fn solve_fixed_point(strategy: &AccessStrategy, nodes: usize) -> Result<FixedPoint> {
    strategy.validate()?;
    if nodes < 1 {
        return Err(MtoaError::Config("n must be at least 1".into()));
    }
    if strategy.k_cutoff() == strategy.n_capture as usize {
        return finish(strategy, nodes, strategy.q_noncapture(), 0.0, 0);
    }
    let (a, res_a, it_a) = iterate(strategy, nodes, strategy.q_schedule[strategy.k_cutoff()])?;
    let (b, _, it_b) = iterate(strategy, nodes, strategy.q_noncapture())?;
    if (a - b).abs() > 1e-8 * a.max(b) {
        return Err(MtoaError::MultipleFixedPoints { first: a, second: b });
    }
    finish(strategy, nodes, a, res_a, it_a.max(it_b))
}

impl FixedPoint {
    /// `(β^(k), p^(k))` for a batch that has failed `stage` times.
    pub fn stage(&self, strategy: &AccessStrategy, stage: usize) -> (f64, f64) {
        if stage < strategy.n_capture as usize {
            (self.beta_c, self.p_c)
        } else {
            (self.beta_nc, self.p_nc)
        }
    }

    /// `(1 - p_C)^{n_C}`.
    pub fn capture_weight(&self, strategy: &AccessStrategy) -> f64 {
        if strategy.n_capture == 0 {
            1.0
        } else {
            self.one_minus_p_c.powi(strategy.n_capture as i32)
        }
    }

    /// Relative residuals of the defining equations at this point:
    /// `[p_C, p_C̄, β_C̄, q̃]`.
    pub fn residuals(&self, strategy: &AccessStrategy) -> [f64; 4] {
        let n = self.nodes;
        let rel = |x: f64, y: f64| if x == y { 0.0 } else { (x - y).abs() / y.abs().max(f64::MIN_POSITIVE) };
        let p_c = if n == 1 { 1.0 } else { (1.0 - self.q_tilde).powi(n as i32 - 1) };
        let a = self.capture_weight(strategy);
        let others = (n - 1) as f64;
        let (p_nc, beta_nc) = if n == 1 {
            (1.0, 1.0)
        } else {
            let p_nc = if strategy.n_capture == 0 {
                self.p_c
            } else {
                self.p_c / (1.0 + others * self.q_tilde * (1.0 - a) / a)
            };
            (p_nc, 1.0 / (1.0 + others * (strategy.m_batch as f64 - 1.0) * self.p_nc * self.q_tilde / a))
        };
        let q = if n == 1 && strategy.k_cutoff() > strategy.n_capture as usize {
            self.q_tilde
        } else {
            harmonic_q(strategy, self.p_nc)
        };
        [rel(self.p_c, p_c), rel(self.p_nc, p_nc), rel(self.beta_nc, beta_nc), rel(self.q_tilde, q)]
    }
}
