//! Network output rate in packets per slot.

use super::fixed_point::FixedPoint;
use crate::error::{MtoaError, Result};
use crate::strategy::AccessStrategy;

/// Below this `q̃` the capture-based expression is replaced by its limit.
pub const SMALL_Q: f64 = 1e-14;

/// `λ_out = n π̃_T`, evaluated from the fixed point.
pub fn network_throughput(fp: &FixedPoint, strategy: &AccessStrategy, nodes: usize) -> Result<f64> {
    let m = strategy.m_batch as f64;
    let n = nodes as f64;
    let n_c = strategy.n_capture;
    if n_c >= 1 && fp.q_tilde < SMALL_Q {
        return Ok(max_throughput(nodes, strategy.m_batch, n_c));
    }
    let a = fp.capture_weight(strategy);
    let lost = (fp.one_minus_p_c - a) / fp.p_c;
    let idle = a / (n * fp.p_c * fp.q_tilde);
    let lambda = m / (m + lost + idle);
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(MtoaError::Numerical(format!("throughput evaluated to {lambda}")));
    }
    Ok(lambda.min(1.0))
}

/// Best attainable throughput over the non-capture probability.
///
/// Without capture the optimum sits at `q = 1/n`; with capture it is the
/// `q̃ → 0` limit.
pub fn max_throughput(nodes: usize, m_batch: u64, n_capture: u32) -> f64 {
    let m = m_batch as f64;
    let n = nodes as f64;
    match n_capture {
        0 => {
            let e = if nodes == 1 { 1.0 } else { ((n - 1.0) * (-1.0 / n).ln_1p()).exp() };
            m / (m - 1.0 + 1.0 / e)
        }
        1 => m / (m + (n - 1.0) / n),
        _ => 1.0,
    }
}
