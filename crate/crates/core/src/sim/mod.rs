//! Slot-accurate simulation of bandit-driven random access over a collision channel.

pub mod agent;
pub mod channel;
pub mod config;
pub mod engine;
pub mod fixed;
pub mod metrics;

pub use agent::{select_action, update_q, AgentState, QRow, TRANSMIT};
pub use channel::{resolve_channel, ChannelResult, RewardKind, SlotOutcome};
pub use config::{NetworkConfig, ResetWindow, Scheme};
pub use engine::{node_rng, node_rngs, run_replication, step_mtoa_g, step_mtoa_l, Network, NodeRng};
pub use fixed::{simulate_fixed_strategy, FixedStrategyStats};
pub use metrics::{jain_index, RunMetrics};
