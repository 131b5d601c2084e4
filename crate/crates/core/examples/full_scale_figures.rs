//! Throughput and fairness against the number of null actions at n = 100,
//! T = 1e7, for MTOA-L with q_th >= alpha and MTOA-G with a 100-slot window.
//! Simulated and analytical values are printed side by side as CSV.
//!
//! Runs 12 full-length simulations, about 2.5 minutes in release mode on
//! one core.
//!
//! ```text
//! cargo run --release -p mtoa --example full_scale_figures > figures.csv
//! ```

use mtoa::analysis::analyze_strategy;
use mtoa::sim::{run_replication, NetworkConfig, ResetWindow};
use mtoa::strategy::AccessStrategy;

const NULLS: [usize; 6] = [9, 24, 49, 99, 199, 399];

pub fn run_example() -> mtoa::Result<()> {
    let (n, horizon) = (100, 10_000_000);
    println!("scheme,L,lambda_sim,jain_sim,lambda_analysis,jain_analysis");
    for global in [false, true] {
        for l in NULLS {
            let (name, cfg, m) = if global {
                ("mtoa-g", NetworkConfig::mtoa_g(n, horizon, l, 0.9, ResetWindow::Finite(100), 1), 100)
            } else {
                ("mtoa-l", NetworkConfig::mtoa_l(n, horizon, l, 0.9, 1.0, 1), 1)
            };
            let sim = run_replication(&cfg)?;
            let a =
                analyze_strategy(&AccessStrategy::uniform_backoff(m, 0, 1.0 / (l as f64 + 1.0))?, n, horizon as f64)?;
            println!("{name},{l},{},{},{},{}", sim.lambda_out_hat, sim.jain.unwrap_or(0.0), a.throughput, a.fairness);
        }
    }
    Ok(())
}

fn main() -> mtoa::Result<()> {
    run_example()
}
