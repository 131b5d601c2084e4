//! Maps learning parameters to the access strategy the network converges to.

use mtoa::sim::ResetWindow;
use mtoa::strategy::{capture_depth, classify, derive_strategy_mtoa_g, derive_strategy_mtoa_l};

pub fn run_example() -> mtoa::Result<()> {
    for (alpha, q_th) in [(0.9, 1.0), (0.9, 0.5), (0.9, 0.05), (0.5, 0.01), (0.5, 0.0)] {
        let depth = capture_depth(alpha, q_th, 1.0)?;
        print!("MTOA-L alpha {alpha} q_th {q_th}: capture depth {depth}");
        match derive_strategy_mtoa_l(99, alpha, q_th, 1.0) {
            Ok(s) => println!(", {:?}, q {:?}", classify(&s), s.q_schedule),
            Err(e) => println!(", {e}"),
        }
    }
    for window in [ResetWindow::Finite(1), ResetWindow::Finite(250), ResetWindow::Unbounded] {
        match derive_strategy_mtoa_g(99, window) {
            Ok(s) => println!("MTOA-G {window:?}: M = {}, {:?}", s.m_batch, classify(&s)),
            Err(e) => println!("MTOA-G {window:?}: {e}"),
        }
    }
    Ok(())
}

fn main() -> mtoa::Result<()> {
    run_example()
}
