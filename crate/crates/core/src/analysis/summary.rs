//! One-call evaluation of a strategy.

use serde::Serialize;

use super::distribution::{limiting_probabilities, StateDistribution};
use super::fixed_point::{solve_fixed_point, FixedPoint};
use super::moments::{fairness_index, service_moments, ServiceMoments};
use super::throughput::network_throughput;
use crate::error::Result;
use crate::strategy::AccessStrategy;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrategyAnalysis {
    pub fixed_point: FixedPoint,
    pub distribution: StateDistribution,
    pub moments: ServiceMoments,
    pub throughput: f64,
    /// Fairness over `T` slots, floored at the Jain minimum `1/n`.
    pub fairness: f64,
}

pub fn analyze_strategy(strategy: &AccessStrategy, nodes: usize, horizon: f64) -> Result<StrategyAnalysis> {
    let fixed_point = solve_fixed_point(strategy, nodes)?;
    let distribution = limiting_probabilities(&fixed_point, strategy)?;
    let moments = service_moments(&fixed_point, strategy)?;
    let throughput = network_throughput(&fixed_point, strategy, nodes)?;
    let fairness = fairness_index(&moments, horizon)?.max(1.0 / nodes as f64);
    Ok(StrategyAnalysis { fixed_point, distribution, moments, throughput, fairness })
}
