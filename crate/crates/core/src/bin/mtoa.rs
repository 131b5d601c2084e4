use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mtoa::harness::{parse_config, run_experiment, Mode};
use mtoa::MtoaError;

#[derive(Parser)]
#[command(name = "mtoa", version, about = "Simulate and analyse bandit-based random access")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run seeded simulation replications
    Simulate(Common),
    /// Evaluate the analytical model for the configured strategy
    Analyze(Common),
    /// Trace the throughput-fairness frontier of a strategy family
    Sweep(Common),
    /// Run simulation and analysis side by side with relative errors
    Compare(Common),
    /// Recommend scheme parameters for a fairness floor
    Recommend(Common),
}

#[derive(Args)]
struct Common {
    /// JSON experiment config
    #[arg(long)]
    config: PathBuf,
    /// CSV output path
    #[arg(long)]
    out: PathBuf,
    /// Optional JSON summary output path
    #[arg(long)]
    summary: Option<PathBuf>,
    /// Use T = 10^7 slots unless the config sets T
    #[arg(long)]
    full_scale: bool,
    /// Worker threads for replications
    #[arg(long)]
    workers: Option<usize>,
}

fn run(mode: Mode, args: Common) -> Result<bool, MtoaError> {
    let text = std::fs::read_to_string(&args.config)
        .map_err(|e| MtoaError::Config(format!("{}: {e}", args.config.display())))?;
    let mut spec = parse_config(&text)?;
    if spec.mode != mode {
        return Err(MtoaError::Config(format!("config mode `{}` does not match command `{mode}`", spec.mode)));
    }
    if args.full_scale {
        spec.apply_full_scale();
    }
    if args.workers == Some(0) {
        return Err(MtoaError::Config("--workers must be at least 1".into()));
    }
    let output = run_experiment(&spec, args.workers)?;
    output.write(&args.out, args.summary.as_deref())?;
    Ok(!output.has_failures())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mode, args) = match cli.command {
        Command::Simulate(a) => (Mode::Simulate, a),
        Command::Analyze(a) => (Mode::Analyze, a),
        Command::Sweep(a) => (Mode::Sweep, a),
        Command::Compare(a) => (Mode::Compare, a),
        Command::Recommend(a) => (Mode::Recommend, a),
    };
    match run(mode, args) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("mtoa: some cells failed; see the status and note columns");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("mtoa: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
