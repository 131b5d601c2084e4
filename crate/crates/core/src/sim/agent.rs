//! Per-node bandit state and the action-value update.
//!
//! Action 0 is the transmit arm, actions `1..=L` are null arms. All Q values
//! start at zero and rewards are 0 or 1, so every entry stays in `[0, 1]` and
//! nearly all of them stay exactly zero. [`QRow`] therefore stores only the
//! positive entries, which keeps action selection independent of `L`.

use rand::Rng;

use crate::error::{MtoaError, Result};

/// Action index of the transmit arm.
pub const TRANSMIT: usize = 0;

/// A row of action values over `L + 1` arms, stored sparsely.
#[derive(Debug, Clone, PartialEq)]
pub struct QRow {
    len: usize,
    // (action, value) with value > 0, sorted by action
    positive: Vec<(usize, f64)>,
}

impl QRow {
    pub fn zeros(len: usize) -> Self {
        QRow { len, positive: Vec::new() }
    }

    /// Builds a row from dense values. Negative values are rejected.
    pub fn from_dense(values: &[f64]) -> Result<Self> {
        let mut positive = Vec::new();
        for (a, &v) in values.iter().enumerate() {
            if !(v >= 0.0) {
                return Err(MtoaError::Config(format!("Q value at action {a} must be >= 0, got {v}")));
            }
            if v > 0.0 {
                positive.push((a, v));
            }
        }
        Ok(QRow { len: values.len(), positive })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, action: usize) -> f64 {
        assert!(action < self.len, "action {action} out of range for {} arms", self.len);
        match self.positive.binary_search_by_key(&action, |&(a, _)| a) {
            Ok(i) => self.positive[i].1,
            Err(_) => 0.0,
        }
    }

    pub fn set(&mut self, action: usize, value: f64) {
        assert!(action < self.len, "action {action} out of range for {} arms", self.len);
        debug_assert!(value >= 0.0);
        match self.positive.binary_search_by_key(&action, |&(a, _)| a) {
            Ok(i) if value > 0.0 => self.positive[i].1 = value,
            Ok(i) => {
                self.positive.remove(i);
            }
            Err(i) if value > 0.0 => self.positive.insert(i, (action, value)),
            Err(_) => {}
        }
    }

    /// Positive entries as `(action, value)` in ascending action order.
    pub fn positive_entries(&self) -> &[(usize, f64)] {
        &self.positive
    }

    pub fn to_dense(&self) -> Vec<f64> {
        let mut v = vec![0.0; self.len];
        for &(a, q) in &self.positive {
            v[a] = q;
        }
        v
    }

    /// Greedy action with uniform tie-breaking.
    ///
    /// Tied maximisers are listed in ascending action order and one is picked
    /// with a single `random_range(0..ties)` draw; a unique maximiser consumes
    /// no randomness. This is exactly what [`select_action`] does on the dense
    /// row, so both produce the same action from the same stream.
    pub fn select<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        if self.positive.is_empty() {
            return if self.len == 1 { 0 } else { rng.random_range(0..self.len) };
        }
        let max = self.positive.iter().fold(0.0f64, |m, &(_, v)| m.max(v));
        let mut ties = self.positive.iter().filter(|&&(_, v)| v == max);
        let count = ties.clone().count();
        if count == 1 {
            return ties.next().map(|&(a, _)| a).unwrap_or(0);
        }
        let pick = rng.random_range(0..count);
        ties.nth(pick).map(|&(a, _)| a).unwrap_or(0)
    }
}

/// Greedy action over a dense row of values, ties broken uniformly.
pub fn select_action<R: Rng + ?Sized>(values: &[f64], rng: &mut R) -> Result<usize> {
    if values.is_empty() {
        return Err(MtoaError::Config("cannot select an action from an empty Q row".into()));
    }
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let ties: Vec<usize> = (0..values.len()).filter(|&a| values[a] == max).collect();
    if ties.len() == 1 {
        return Ok(ties[0]);
    }
    Ok(ties[rng.random_range(0..ties.len())])
}

/// One step of the exponential recency-weighted average, `q + alpha (r - q)`.
#[inline]
pub fn update_q(q: f64, reward: u8, alpha: f64) -> f64 {
    q + alpha * (f64::from(reward) - q)
}

/// State of one learning node.
#[derive(Debug, Clone, PartialEq)]
pub struct AgentState {
    pub q_row: QRow,
    /// MTOA-G window counter: slots since the current positive entry appeared.
    pub w_counter: u64,
}

impl AgentState {
    pub fn new(null_actions: usize) -> Self {
        AgentState { q_row: QRow::zeros(null_actions + 1), w_counter: 0 }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unique_maximum_is_always_chosen() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            assert_eq!(select_action(&[0.5, 0.0, 0.0], &mut rng).unwrap(), 0);
        }
    }

    #[test]
    fn symmetric_tie_is_fair() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let draws = 100_000;
        let zeros = (0..draws).filter(|_| select_action(&[0.0, 0.0], &mut rng).unwrap() == 0).count();
        let freq = zeros as f64 / draws as f64;
        assert!((freq - 0.5).abs() < 0.01, "{freq}");
    }

    #[test]
    fn empty_row_is_a_config_error() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert!(matches!(select_action(&[], &mut rng), Err(MtoaError::Config(_))));
    }

    #[test]
    fn update_rule_examples() {
        assert_eq!(update_q(0.0, 1, 0.5), 0.5);
        assert_eq!(update_q(0.5, 0, 0.5), 0.25);
        assert_eq!(update_q(0.7, 0, 1.0), 0.0);
    }

    #[test]
    fn sparse_row_set_and_get() {
        let mut row = QRow::zeros(5);
        row.set(3, 0.2);
        row.set(1, 0.4);
        assert_eq!(row.to_dense(), vec![0.0, 0.4, 0.0, 0.2, 0.0]);
        row.set(1, 0.0);
        assert_eq!(row.positive_entries(), &[(3, 0.2)]);
        assert_eq!(row.get(1), 0.0);
    }

    #[test]
    fn negative_dense_values_rejected() {
        assert!(QRow::from_dense(&[0.1, -0.2]).is_err());
    }
}
