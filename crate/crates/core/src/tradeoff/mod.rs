//! Throughput-fairness tradeoff curves and tuning recommendations.

pub mod frontier;
pub mod recommend;
pub mod sweep;

pub use frontier::{dominates, max_throughput_under_fairness, pareto_frontier};
pub use recommend::{
    best_under_fairness, recommend_mtoa_g, recommend_mtoa_l, MtoaGRecommendation, MtoaLRecommendation, M_MAX,
};
pub use sweep::{
    evaluate_point, log_space, log_space_int, refine_at_fairness, sweep_tradeoff, PointSource, SweepFailure, SweepGrid,
    SweepResult, TradeoffParams, TradeoffPoint,
};
