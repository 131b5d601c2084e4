use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{MtoaError, Result};

/// Which reward the agents learn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scheme {
    /// Local rewards: a node is rewarded only for its own successful transmission.
    #[serde(rename = "mtoa-l")]
    MtoaL,
    /// Global rewards: every node is rewarded for any successful transmission.
    #[serde(rename = "mtoa-g")]
    MtoaG,
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scheme::MtoaL => f.write_str("mtoa-l"),
            Scheme::MtoaG => f.write_str("mtoa-g"),
        }
    }
}

/// Number of slots a positive Q entry may persist under MTOA-G before it is reset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ResetWindow {
    Finite(u64),
    Unbounded,
}

impl ResetWindow {
    pub fn finite(self) -> Option<u64> {
        match self {
            ResetWindow::Finite(m) => Some(m),
            ResetWindow::Unbounded => None,
        }
    }
}

impl fmt::Display for ResetWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResetWindow::Finite(m) => write!(f, "{m}"),
            ResetWindow::Unbounded => f.write_str("unbounded"),
        }
    }
}

/// Everything needed to run one seeded replication.
///
/// `q_threshold` only matters for [`Scheme::MtoaL`] and `reset_window` only
/// for [`Scheme::MtoaG`]; the unused one is still validated.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkConfig {
    /// Node count `n`.
    pub nodes: usize,
    /// Horizon `T` in slots.
    pub horizon: u64,
    /// Number of null actions `L`; each agent has `L + 1` arms.
    pub null_actions: usize,
    /// Learning rate in (0, 1].
    pub alpha: f64,
    pub scheme: Scheme,
    /// Entries at or below this value are reset to zero (MTOA-L).
    pub q_threshold: f64,
    /// Q-reset window (MTOA-G).
    pub reset_window: ResetWindow,
    pub seed: u64,
}

impl NetworkConfig {
    pub fn mtoa_l(nodes: usize, horizon: u64, null_actions: usize, alpha: f64, q_threshold: f64, seed: u64) -> Self {
        NetworkConfig {
            nodes,
            horizon,
            null_actions,
            alpha,
            scheme: Scheme::MtoaL,
            q_threshold,
            reset_window: ResetWindow::Unbounded,
            seed,
        }
    }

    pub fn mtoa_g(
        nodes: usize,
        horizon: u64,
        null_actions: usize,
        alpha: f64,
        reset_window: ResetWindow,
        seed: u64,
    ) -> Self {
        NetworkConfig {
            nodes,
            horizon,
            null_actions,
            alpha,
            scheme: Scheme::MtoaG,
            q_threshold: 0.0,
            reset_window,
            seed,
        }
    }

    /// Same configuration with a different seed.
    pub fn with_seed(&self, seed: u64) -> Self {
        NetworkConfig { seed, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes < 1 {
            return Err(MtoaError::Config("n must be at least 1".into()));
        }
        if self.horizon < 1 {
            return Err(MtoaError::Config("T must be at least 1".into()));
        }
        if self.horizon > i64::MAX as u64 {
            return Err(MtoaError::Config("T must be below 2^63".into()));
        }
        if self.null_actions < 1 {
            return Err(MtoaError::Config("L must be at least 1".into()));
        }
        if !(self.alpha > 0.0 && self.alpha <= 1.0) {
            return Err(MtoaError::Config("alpha must lie in (0,1]".into()));
        }
        if !(self.q_threshold >= 0.0 && self.q_threshold.is_finite()) {
            return Err(MtoaError::Config("q_th must be a finite value >= 0".into()));
        }
        if self.reset_window == ResetWindow::Finite(0) {
            return Err(MtoaError::Config("m_window must be at least 1 or unbounded".into()));
        }
        Ok(())
    }
}
