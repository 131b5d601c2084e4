//! Parameter recommendations for a fairness floor of 0.99 at T = 1e7.

use mtoa::tradeoff::{recommend_mtoa_g, recommend_mtoa_l};

pub fn run_example() -> mtoa::Result<()> {
    for n in [100, 1000] {
        let l = recommend_mtoa_l(n, 1e7, 0.99)?;
        println!(
            "n = {n:<5} MTOA-L: alpha {} q_th {} L {}  -> throughput {:.4}, jain {:.4}",
            l.alpha, l.q_threshold, l.null_actions, l.throughput, l.fairness
        );
        let g = recommend_mtoa_g(n, 1e7, 0.99)?;
        println!(
            "n = {n:<5} MTOA-G: L {} window {}  -> throughput {:.4}, jain {:.4}",
            g.null_actions, g.m_window, g.throughput, g.fairness
        );
    }
    Ok(())
}

fn main() -> mtoa::Result<()> {
    run_example()
}
