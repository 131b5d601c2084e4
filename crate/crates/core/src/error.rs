//! Error types shared across the crate.

use thiserror::Error;

/// Errors produced by the simulator, the analytical engine and the harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MtoaError {
    /// A parameter lies outside its valid range, or a required field is missing.
    #[error("configuration error: {0}")]
    Config(String),

    /// A quantity is mathematically undefined for the given input.
    #[error("domain error: {0}")]
    Domain(String),

    /// The fixed-point iteration did not reach the tolerance within its budget.
    #[error("fixed point did not converge after {iterations} iterations (last residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    /// Fixed-point iterations started from different guesses landed on different solutions.
    #[error("fixed point is not unique: starts converged to {first} and {second}")]
    MultipleFixedPoints { first: f64, second: f64 },

    /// A formula produced a non-finite or out-of-range value.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// The learned strategy never releases the channel, so there is no renewal structure.
    #[error("strategy monopolizes channel; no steady state with re-contention: {0}")]
    Monopolizing(String),

    /// No frontier point satisfies the requested fairness floor.
    #[error("fairness floor infeasible: no point reaches J_T >= {j_min}")]
    FairnessInfeasible { j_min: f64 },

    /// A success counter would overflow.
    #[error("internal error: {0}")]
    Internal(String),

    #[error("I/O error: {0}")]
    Io(String),
}

impl MtoaError {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            MtoaError::Config(_) | MtoaError::Domain(_) => 2,
            MtoaError::Io(_) | MtoaError::Internal(_) => 1,
            _ => 3,
        }
    }
}

impl From<std::io::Error> for MtoaError {
    fn from(e: std::io::Error) -> Self {
        MtoaError::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, MtoaError>;
