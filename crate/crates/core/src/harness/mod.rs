//! Configuration, orchestration and CSV output for experiments.

pub mod compare;
pub mod config;
pub mod report;
pub mod run;

pub use compare::{compare_sim_analysis, Comparison};
pub use config::{parse_config, ExperimentSpec, GridSpec, Mode};
pub use report::{read_csv, to_csv_string, write_csv, ReportRow, RowSource, RowStatus, CSV_HEADER};
pub use run::{run_experiment, run_replications, sweep_grid, ExperimentOutput};
