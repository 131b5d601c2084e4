//! Local-reward learning (MTOA-L) on a 20-node channel.
//!
//! Prints throughput and Jain's index for a threshold that resets every
//! failure and for one that lets a winner hold the channel for two failures.
//!
//! ```text
//! cargo run --release -p mtoa --example simulate_mtoa_l
//! ```

use mtoa::sim::{run_replication, NetworkConfig};

pub fn run_example() -> mtoa::Result<()> {
    let n = 20;
    let horizon = 200_000;
    for q_th in [1.0, 0.05] {
        let cfg = NetworkConfig::mtoa_l(n, horizon, n - 1, 0.9, q_th, 7);
        let m = run_replication(&cfg)?;
        let busiest = m.per_node_rates.iter().cloned().fold(0.0, f64::max);
        println!(
            "q_th = {q_th:<4}  throughput {:.4}  jain {:.4}  busiest node {:.4}",
            m.lambda_out_hat,
            m.jain.unwrap_or(0.0),
            busiest
        );
    }
    Ok(())
}

fn main() -> mtoa::Result<()> {
    run_example()
}
