//! Maps learned bandit behaviour onto queueing-model access strategies.
//!
//! Under MTOA-L a node that has just succeeded keeps transmitting with
//! probability 1 until its transmit value decays to the threshold, i.e. for
//! `n_C` failures, and then falls back to `1/(L+1)`. Under MTOA-G a winner
//! keeps the channel for the whole reset window, which is connection-based
//! access with batch size `M`, and contention always happens at `1/(L+1)`.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{MtoaError, Result};
use crate::sim::ResetWindow;

/// Number of failures a freshly captured packet tolerates before backing off.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaptureDepth {
    Finite(u32),
    /// The transmit value never reaches the threshold.
    Infinite,
}

impl CaptureDepth {
    pub fn finite(self) -> Option<u32> {
        match self {
            CaptureDepth::Finite(k) => Some(k),
            CaptureDepth::Infinite => None,
        }
    }
}

impl fmt::Display for CaptureDepth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CaptureDepth::Finite(k) => write!(f, "{k}"),
            CaptureDepth::Infinite => f.write_str("infinite"),
        }
    }
}

fn check_capture_inputs(alpha: f64, q_th: f64, q0: f64) -> Result<()> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(MtoaError::Domain("alpha must lie in (0,1]".into()));
    }
    if !(q_th >= 0.0) {
        return Err(MtoaError::Domain("q_th must be >= 0".into()));
    }
    if !(q0 > 0.0 && q0 <= 1.0) {
        return Err(MtoaError::Domain(format!("Q_0 must lie in (0,1], got {q0}")));
    }
    Ok(())
}

/// Capture depth `n_C` from the learning rate, threshold and starting value.
pub fn capture_depth(alpha: f64, q_th: f64, q0: f64) -> Result<CaptureDepth> {
    check_capture_inputs(alpha, q_th, q0)?;
    if q_th >= alpha {
        return Ok(CaptureDepth::Finite(0));
    }
    if alpha == 1.0 {
        return Ok(CaptureDepth::Finite(1));
    }
    if q_th == 0.0 {
        return Ok(CaptureDepth::Infinite);
    }
    if q0 <= q_th {
        return Ok(CaptureDepth::Finite(0));
    }
    // ceil(log_{1-alpha}(q_th / q0)), both logs negative
    let steps = (q_th / q0).ln() / (1.0 - alpha).ln();
    let mut k = steps.ceil().max(1.0) as u32;
    // Guard the ceiling against rounding of the logarithms.
    let decayed = |k: u32| q0 * (1.0 - alpha).powi(k as i32);
    while k > 1 && decayed(k - 1) <= q_th {
        k -= 1;
    }
    while decayed(k) > q_th {
        k += 1;
    }
    Ok(CaptureDepth::Finite(k))
}

/// Literal decay loop: first `k` with `(1-alpha)^k q0 <= q_th`.
///
/// Exists as an independent check of [`capture_depth`]. A value that
/// underflows to zero without having crossed a zero threshold counts as
/// never reaching it.
pub fn capture_depth_oracle(alpha: f64, q_th: f64, q0: f64, max_iter: u64) -> CaptureDepth {
    let mut q = q0;
    if q <= q_th {
        return CaptureDepth::Finite(0);
    }
    for k in 1..=max_iter {
        q *= 1.0 - alpha;
        if q == 0.0 && q_th == 0.0 && alpha < 1.0 {
            return CaptureDepth::Infinite;
        }
        if q <= q_th {
            return CaptureDepth::Finite(k as u32);
        }
    }
    CaptureDepth::Infinite
}

/// Queueing-model view of an access strategy.
///
/// `q_schedule[k]` is the transmission probability after `k` failures of the
/// head-of-line packet, for `k = 0..=K`; it stays at `q_K` beyond the cutoff.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccessStrategy {
    /// Batch size `M`: packets sent per successful contention.
    pub m_batch: u64,
    /// Capture depth `n_C`.
    pub n_capture: u32,
    pub q_schedule: Vec<f64>,
}

impl AccessStrategy {
    pub fn new(m_batch: u64, n_capture: u32, q_schedule: Vec<f64>) -> Result<Self> {
        let s = AccessStrategy { m_batch, n_capture, q_schedule };
        s.validate()?;
        Ok(s)
    }

    /// `K = n_C`: capture stages at probability 1, then a single non-capture probability.
    pub fn uniform_backoff(m_batch: u64, n_capture: u32, q_noncapture: f64) -> Result<Self> {
        let mut q = vec![1.0; n_capture as usize];
        q.push(q_noncapture);
        Self::new(m_batch, n_capture, q)
    }

    /// Cutoff phase `K`.
    pub fn k_cutoff(&self) -> usize {
        self.q_schedule.len() - 1
    }

    /// Transmission probability at the first non-capture stage.
    pub fn q_noncapture(&self) -> f64 {
        self.q_schedule[self.n_capture as usize]
    }

    pub fn q_at(&self, stage: usize) -> f64 {
        self.q_schedule[stage.min(self.k_cutoff())]
    }

    pub fn validate(&self) -> Result<()> {
        if self.m_batch < 1 {
            return Err(MtoaError::Config("batch size M must be at least 1".into()));
        }
        if self.q_schedule.is_empty() {
            return Err(MtoaError::Config("q schedule must contain at least q_0".into()));
        }
        if self.n_capture as usize > self.k_cutoff() {
            return Err(MtoaError::Config("cutoff phase K must be >= n_C".into()));
        }
        for (k, &q) in self.q_schedule.iter().enumerate() {
            if !(q > 0.0 && q <= 1.0) {
                return Err(MtoaError::Config(format!("q_{k} must lie in (0,1], got {q}")));
            }
            if k < self.n_capture as usize && q != 1.0 {
                return Err(MtoaError::Config(format!("capture stage q_{k} must equal 1")));
            }
        }
        if self.q_schedule.windows(2).any(|w| w[1] > w[0]) {
            return Err(MtoaError::Config("q schedule must be non-increasing".into()));
        }
        Ok(())
    }
}

/// Strategy learned by MTOA-L: connection-free, `K = n_C`, `q_{n_C} = 1/(L+1)`.
pub fn derive_strategy_mtoa_l(null_actions: usize, alpha: f64, q_th: f64, q0: f64) -> Result<AccessStrategy> {
    if null_actions < 1 {
        return Err(MtoaError::Config("L must be at least 1".into()));
    }
    let n_capture = capture_depth(alpha, q_th, q0)?.finite().ok_or_else(|| {
        MtoaError::Monopolizing(format!("q_th = {q_th} with alpha = {alpha} never resets the transmit value"))
    })?;
    AccessStrategy::uniform_backoff(1, n_capture, 1.0 / (null_actions as f64 + 1.0))
}

/// Strategy learned by MTOA-G: batch size equal to the window, capture-free.
pub fn derive_strategy_mtoa_g(null_actions: usize, window: ResetWindow) -> Result<AccessStrategy> {
    if null_actions < 1 {
        return Err(MtoaError::Config("L must be at least 1".into()));
    }
    let m = window
        .finite()
        .ok_or_else(|| MtoaError::Monopolizing("an unbounded reset window has no renewal structure".into()))?;
    AccessStrategy::uniform_backoff(m, 0, 1.0 / (null_actions as f64 + 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Sensing {
    SensingFree,
    SensingBased,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Connection {
    ConnectionFree,
    ConnectionBased,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Capture {
    CaptureFree,
    CaptureBased,
}

/// Design features of an access strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct StrategyClass {
    pub sensing: Sensing,
    pub connection: Connection,
    pub capture: Capture,
}

pub fn classify(strategy: &AccessStrategy) -> StrategyClass {
    StrategyClass {
        sensing: Sensing::SensingFree,
        connection: if strategy.m_batch > 1 { Connection::ConnectionBased } else { Connection::ConnectionFree },
        capture: if strategy.n_capture >= 1 { Capture::CaptureBased } else { Capture::CaptureFree },
    }
}
