//! Simulation against analysis through the experiment harness, printing the
//! CSV the `mtoa compare` command would write.

use mtoa::harness::{parse_config, run_experiment, to_csv_string};

const CONFIG: &str = r#"{
    "mode": "compare",
    "scheme": "mtoa-g",
    "n": 40,
    "L": 39,
    "m_window": 20,
    "T": 200000,
    "replications": 3,
    "seed": 11
}"#;

pub fn run_example() -> mtoa::Result<()> {
    let spec = parse_config(CONFIG)?;
    let out = run_experiment(&spec, None)?;
    print!("{}", to_csv_string(&out.rows)?);
    Ok(())
}

fn main() -> mtoa::Result<()> {
    run_example()
}
