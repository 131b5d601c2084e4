use serde::Serialize;

use crate::error::{MtoaError, Result};

/// Jain's fairness index `(sum x)^2 / (n * sum x^2)`.
///
/// Undefined when every rate is zero; that case is an error rather than 0.
pub fn jain_index(rates: &[f64]) -> Result<f64> {
    if rates.is_empty() {
        return Err(MtoaError::Domain("Jain index of an empty rate vector".into()));
    }
    if rates.iter().any(|&x| !(x >= 0.0) || !x.is_finite()) {
        return Err(MtoaError::Domain("Jain index requires finite non-negative rates".into()));
    }
    let sum: f64 = rates.iter().sum();
    let sum_sq: f64 = rates.iter().map(|x| x * x).sum();
    if sum_sq == 0.0 {
        return Err(MtoaError::Domain("Jain index is undefined when all rates are zero".into()));
    }
    let j = sum * sum / (rates.len() as f64 * sum_sq);
    // Rounding can push a perfectly fair vector a hair above 1.
    Ok(j.min(1.0))
}

/// Aggregate outcome of one replication.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunMetrics {
    pub per_node_successes: Vec<u64>,
    /// Network throughput: successes per slot.
    pub lambda_out_hat: f64,
    /// Jain index of the per-node output rates; `None` when no packet got through.
    pub jain: Option<f64>,
    pub per_node_rates: Vec<f64>,
}

impl RunMetrics {
    pub fn from_successes(per_node_successes: Vec<u64>, horizon: u64) -> Result<Self> {
        let total = per_node_successes
            .iter()
            .try_fold(0u64, |acc, &s| acc.checked_add(s))
            .ok_or_else(|| MtoaError::Internal("success counter overflow".into()))?;
        let t = horizon as f64;
        let per_node_rates: Vec<f64> = per_node_successes.iter().map(|&s| s as f64 / t).collect();
        let jain = if total == 0 { None } else { Some(jain_index(&per_node_rates)?) };
        Ok(RunMetrics { lambda_out_hat: total as f64 / t, jain, per_node_rates, per_node_successes })
    }
}
