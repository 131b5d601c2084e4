//! Saturated-queue model of a fixed access strategy.

pub mod distribution;
pub mod fixed_point;
pub mod moments;
pub mod oracle;
pub mod summary;
pub mod throughput;

pub use distribution::{limiting_probabilities, StateDistribution};
pub use fixed_point::{solve_fixed_point, FixedPoint};
pub use moments::{
    fairness_index, service_moments, service_moments_closed_form, service_moments_general, variance_ratio_capture_free,
    ServiceMoments,
};
pub use oracle::{hol_renewal_oracle, EmpiricalMoments};
pub use summary::{analyze_strategy, StrategyAnalysis};
pub use throughput::{max_throughput, network_throughput};
