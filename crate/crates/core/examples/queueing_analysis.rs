//! Fixed point, state distribution, service moments and the resulting
//! throughput and short-term fairness for a few strategies on 100 nodes.
//! The last block checks the moments against the renewal sampler.

use mtoa::analysis::{analyze_strategy, hol_renewal_oracle};
use mtoa::strategy::AccessStrategy;

pub fn run_example() -> mtoa::Result<()> {
    let n = 100;
    let horizon = 1e6;
    let cases = [
        ("capture-free", AccessStrategy::uniform_backoff(1, 0, 0.01)?),
        ("capture depth 2", AccessStrategy::uniform_backoff(1, 2, 1e-3)?),
        ("batch of 100", AccessStrategy::uniform_backoff(100, 0, 0.01)?),
        ("two backoff stages", AccessStrategy::new(1, 1, vec![1.0, 0.02, 0.005])?),
    ];
    for (label, s) in &cases {
        let a = analyze_strategy(s, n, horizon)?;
        println!("{label}");
        println!(
            "  beta_nc {:.5}  p_c {:.5}  p_nc {:.5}  q~ {:.3e}  ({} iterations)",
            a.fixed_point.beta_nc,
            a.fixed_point.p_c,
            a.fixed_point.p_nc,
            a.fixed_point.q_tilde,
            a.fixed_point.iterations
        );
        println!("  pi_T {:.5}  E[D] {:.2}  Var[D] {:.4e}", a.distribution.pi_t(), a.moments.d_bar, a.moments.sigma2);
        println!("  throughput {:.5}  jain(T=1e6) {:.5}", a.throughput, a.fairness);
    }
    let (_, s) = &cases[1];
    let a = analyze_strategy(s, n, horizon)?;
    let e = hol_renewal_oracle(&a.fixed_point, s, 1, 100_000)?;
    println!(
        "renewal sampler: mean {:.2} ± {:.2} (model {:.2}), variance {:.4e} ± {:.1e} (model {:.4e})",
        e.mean, e.mean_se, a.moments.d_bar, e.variance, e.variance_se, a.moments.sigma2
    );
    Ok(())
}

fn main() -> mtoa::Result<()> {
    run_example()
}
