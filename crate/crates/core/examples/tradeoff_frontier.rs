//! Throughput-fairness frontiers of connection-free access for capture
//! depths 0 to 3 on 100 nodes over a 1e7-slot horizon, and the best
//! throughput each family reaches at Jain's index 0.99.

use mtoa::tradeoff::{best_under_fairness, pareto_frontier, sweep_tradeoff, SweepGrid};

pub fn run_example() -> mtoa::Result<()> {
    let grid = SweepGrid::connection_free(100, 1e7, vec![0, 1, 2, 3]);
    let result = sweep_tradeoff(&grid)?;
    let frontier = pareto_frontier(&result.points);
    println!("{} cells, {} failed, {} on the joint frontier", grid.len(), result.failures.len(), frontier.len());
    for p in frontier.iter().step_by((frontier.len() / 10).max(1)) {
        println!(
            "  jain {:.4}  throughput {:.4}  n_C {}  q {:.3e}",
            p.fairness, p.throughput, p.params.n_capture, p.params.q_noncapture
        );
    }
    for n_c in 0..=3 {
        let family = SweepGrid::connection_free(100, 1e7, vec![n_c]);
        match best_under_fairness(&family, 0.99) {
            Ok(p) => println!("n_C = {n_c}: {:.4} at q = {:.3e}", p.throughput, p.params.q_noncapture),
            Err(e) => println!("n_C = {n_c}: {e}"),
        }
    }
    Ok(())
}

fn main() -> mtoa::Result<()> {
    run_example()
}
