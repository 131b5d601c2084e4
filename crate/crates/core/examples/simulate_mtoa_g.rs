//! Global-reward learning (MTOA-G): throughput and fairness against the
//! Q-reset window on a 50-node channel.
//!
//! ```text
//! cargo run --release -p mtoa --example simulate_mtoa_g
//! ```

use mtoa::sim::{run_replication, NetworkConfig, ResetWindow};

pub fn run_example() -> mtoa::Result<()> {
    let n = 50;
    println!("{:>10}  {:>10}  {:>8}", "window", "throughput", "jain");
    for window in [ResetWindow::Finite(1), ResetWindow::Finite(10), ResetWindow::Finite(100), ResetWindow::Unbounded] {
        let m = run_replication(&NetworkConfig::mtoa_g(n, 200_000, n - 1, 0.9, window, 3))?;
        let label = window.finite().map_or("unbounded".to_string(), |w| w.to_string());
        println!("{label:>10}  {:>10.4}  {:>8.4}", m.lambda_out_hat, m.jain.unwrap_or(0.0));
    }
    Ok(())
}

fn main() -> mtoa::Result<()> {
    run_example()
}
