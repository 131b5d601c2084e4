use serde::Serialize;

/// Outcome of one slot on the collision channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ChannelResult {
    Idle,
    /// Exactly one node transmitted; carries its index.
    Success(usize),
    Collision,
}

impl ChannelResult {
    pub fn is_success(self) -> bool {
        matches!(self, ChannelResult::Success(_))
    }
}

/// A transmission succeeds if and only if no other node transmits in the same slot.
pub fn resolve_channel(transmitters: &[usize]) -> ChannelResult {
    match transmitters {
        [] => ChannelResult::Idle,
        [i] => ChannelResult::Success(*i),
        _ => ChannelResult::Collision,
    }
}

/// How rewards are derived from the channel outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RewardKind {
    /// Only the sole successful transmitter is rewarded.
    Local,
    /// Every node receives the network-success indicator.
    Global,
}

/// Full record of one slot, used for tracing and for checking invariants.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlotOutcome {
    /// Nodes that chose the transmit arm, ascending.
    pub transmitters: Vec<usize>,
    pub result: ChannelResult,
    pub reward_kind: RewardKind,
    /// Action taken by every node in this slot.
    pub actions: Vec<usize>,
}

impl SlotOutcome {
    pub fn reward(&self, node: usize) -> u8 {
        match (self.reward_kind, self.result) {
            (RewardKind::Local, ChannelResult::Success(i)) => u8::from(i == node),
            (RewardKind::Global, ChannelResult::Success(_)) => 1,
            _ => 0,
        }
    }

    pub fn rewards(&self) -> Vec<u8> {
        (0..self.actions.len()).map(|i| self.reward(i)).collect()
    }
}
