//! Channel capture under MTOA-L: with `q_th = 0` a winner's transmit value
//! never resets, so one node keeps the channel. The starting value of each
//! captured packet is sampled after every success.

use mtoa::sim::{Network, NetworkConfig};

pub fn run_example() -> mtoa::Result<()> {
    for (alpha, q_th) in [(0.5, 0.0), (0.9, 0.05)] {
        let mut net = Network::new(NetworkConfig::mtoa_l(100, 200_000, 99, alpha, q_th, 5))?;
        net.record_q0();
        net.run_to_horizon()?;
        let m = net.metrics()?;
        let q0 = net.q0_samples();
        let mean_q0 = q0.iter().sum::<f64>() / q0.len().max(1) as f64;
        let holders = m.per_node_successes.iter().filter(|&&s| s > 0).count();
        println!(
            "alpha {alpha} q_th {q_th}: throughput {:.4}, jain {:.4}, {holders} nodes ever succeeded, mean Q0 {mean_q0:.4}",
            m.lambda_out_hat,
            m.jain.unwrap_or(0.0)
        );
    }
    Ok(())
}

fn main() -> mtoa::Result<()> {
    run_example()
}
