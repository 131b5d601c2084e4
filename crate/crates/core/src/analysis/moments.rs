//! Mean and variance of the per-node inter-batch service time `D`.
//!
//! `D` runs from the end of one transmitted batch to the end of the next one
//! and includes the `M` transmission slots. Its first two factorial moments
//! come from differentiating the probability generating function at 1.

use serde::Serialize;

use super::fixed_point::FixedPoint;
use crate::error::{MtoaError, Result};
use crate::strategy::AccessStrategy;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ServiceMoments {
    /// `E[D]`.
    pub d_bar: f64,
    /// `Var[D]`.
    pub sigma2: f64,
    /// `G'(1)`.
    pub gd1: f64,
    /// `G''(1)`.
    pub gd2: f64,
}

impl ServiceMoments {
    fn from_derivatives(gd1: f64, gd2: f64) -> Result<Self> {
        let sigma2 = gd2 + gd1 - gd1 * gd1;
        if !(gd1.is_finite() && gd2.is_finite() && gd1 > 0.0) {
            return Err(MtoaError::Numerical(format!("service moments diverge (G' = {gd1}, G'' = {gd2})")));
        }
        Ok(ServiceMoments { d_bar: gd1, sigma2: sigma2.max(0.0), gd1, gd2 })
    }

    /// `σ²/D̄`, the growth rate of the per-node success-count variance.
    pub fn variance_ratio(&self) -> f64 {
        self.sigma2 / self.d_bar
    }
}

/// Moments using the closed form when `K = n_C`, the stage sum otherwise.
pub fn service_moments(fp: &FixedPoint, strategy: &AccessStrategy) -> Result<ServiceMoments> {
    if strategy.k_cutoff() == strategy.n_capture as usize {
        service_moments_closed_form(fp, strategy)
    } else {
        service_moments_general(fp, strategy)
    }
}

/// Closed form for strategies whose cutoff equals the capture depth.
pub fn service_moments_closed_form(fp: &FixedPoint, strategy: &AccessStrategy) -> Result<ServiceMoments> {
    let n_c = strategy.n_capture as usize;
    if strategy.k_cutoff() != n_c {
        return Err(MtoaError::Domain("closed-form moments need K = n_C".into()));
    }
    let m = strategy.m_batch as f64;
    let n = fp.nodes as f64;
    let q = strategy.q_schedule[n_c];
    let (pc, omp) = (fp.p_c, fp.one_minus_p_c);
    let a = fp.capture_weight(strategy);
    let x = 1.0 / (fp.p_nc * fp.beta_nc * q);
    // a·X expanded so it stays finite when a underflows
    let ax = (n - 1.0) * (m + omp / pc - a / pc) + a / (pc * q);
    let excess = ax - a / pc;
    let gd1 = m + omp / pc + excess;
    let tail = if excess == 0.0 { 0.0 } else { 2.0 * excess * (x + 1.0 / pc + m + n_c as f64 - 2.0) };
    let gd2 = m * (m - 1.0) + 2.0 * omp * (m - 1.0) / pc + 2.0 * omp / (pc * pc) + tail;
    ServiceMoments::from_derivatives(gd1, gd2)
}

/// Stage-by-stage sum valid for any `K ≥ n_C`.
pub fn service_moments_general(fp: &FixedPoint, strategy: &AccessStrategy) -> Result<ServiceMoments> {
    let k = strategy.k_cutoff();
    let m = strategy.m_batch as f64;
    let mut p = Vec::with_capacity(k + 1);
    let mut g1 = Vec::with_capacity(k + 1);
    let mut g2 = Vec::with_capacity(k + 1);
    for j in 0..=k {
        let (beta, pj) = fp.stage(strategy, j);
        // a batch stays in the cutoff stage until it succeeds
        let s = if j == k { pj * beta * strategy.q_schedule[j] } else { beta * strategy.q_schedule[j] };
        if !(s > 0.0) {
            return Err(MtoaError::Numerical(format!("stage {j} is never left")));
        }
        p.push(pj);
        g1.push(1.0 / s);
        g2.push(2.0 * (1.0 - s) / (s * s));
    }
    let mut survival = vec![1.0; k + 1];
    for j in 1..=k {
        survival[j] = survival[j - 1] * (1.0 - p[j - 1]);
    }
    // tail[j] = sum_{l>=j} g1_l prod_{i=j}^{l-1} (1 - p_i)
    let mut tail = vec![0.0; k + 1];
    tail[k] = g1[k];
    for j in (0..k).rev() {
        tail[j] = g1[j] + (1.0 - p[j]) * tail[j + 1];
    }
    let inner: Vec<f64> =
        (0..=k).map(|j| g2[j] + 2.0 * m * g1[j] - 2.0 * g1[j] * g1[j] + 2.0 * g1[j] * tail[j]).collect();
    // the slot that ends a batch overlaps the first slot of the fresh attempt;
    // that slot is only shared when it also succeeds in the K = 0 case
    let w = if k == 0 { 1.0 / g1[0] } else { fp.stage(strategy, 0).0 * strategy.q_schedule[0] };
    let gd1 = m - w * g1[0] + (0..=k).map(|j| g1[j] * survival[j]).sum::<f64>();
    let gd2 = (0..=k).map(|j| inner[j] * survival[j]).sum::<f64>() - w * inner[0] + m * (m - 1.0);
    ServiceMoments::from_derivatives(gd1, gd2)
}

/// Jain-index approximation `1 / (1 + (σ²/D̄)/T)` for a horizon of `T` slots.
pub fn fairness_index(moments: &ServiceMoments, horizon: f64) -> Result<f64> {
    if !(horizon > 0.0) {
        return Err(MtoaError::Config("T must be positive".into()));
    }
    let j = 1.0 / (1.0 + moments.variance_ratio() / horizon);
    if !j.is_finite() {
        return Err(MtoaError::Numerical("fairness index is not finite".into()));
    }
    Ok(j)
}

/// `σ²/D̄` for capture-free strategies with `K = 0`.
pub fn variance_ratio_capture_free(q0: f64, nodes: usize, m_batch: u64) -> Result<f64> {
    if !(q0 > 0.0 && q0 <= 1.0) || nodes < 1 || m_batch < 1 {
        return Err(MtoaError::Domain("need q in (0,1], n >= 1, M >= 1".into()));
    }
    let n = nodes as f64;
    let m = m_batch as f64;
    let f = if nodes == 1 { q0 } else { q0 * ((n - 1.0) * (-q0).ln_1p()).exp() };
    let inv = 1.0 / f;
    // 1 - M/(1/f + n(M-1)), with the numerator expanded to avoid cancellation
    let share = (inv - 1.0 + (n - 1.0) * (m - 1.0)) / (inv + n * (m - 1.0));
    let ratio = (inv + (n - 1.0) * (m - 1.0)) * share;
    if !ratio.is_finite() {
        return Err(MtoaError::Numerical(format!("variance ratio diverges at q = {q0}")));
    }
    Ok(ratio)
}
