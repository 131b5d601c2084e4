//! Learning-based random access over a shared collision channel.
//!
//! [`sim`] runs the bandit agents slot by slot, [`strategy`] maps their
//! learned behaviour to a backoff strategy, [`analysis`] evaluates such a
//! strategy in closed form, [`tradeoff`] searches parameter families for the
//! best throughput at a given fairness, and [`harness`] wires everything to
//! JSON configs and CSV output.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod error;
pub mod harness;
pub mod sim;
pub mod strategy;
pub mod tradeoff;

pub use error::{MtoaError, Result};
