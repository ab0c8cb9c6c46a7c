//! Batch experiment runner: JSON configs in, CSV and manifest artifacts out.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::Value;

use qelm::config::{apply_override, ExperimentConfig};
use qelm::runner::{run, RunArtifacts};
use qelm::Error;

#[derive(Parser)]
#[command(
    name = "qelm",
    version,
    about = "Simulation laboratory for quantum extreme learning machines",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact Fourier spectrum of one readout with a DFT cross-check
    Spectrum(RunArgs),
    /// Average active-frequency count across reservoirs and register sizes
    Richness(RunArgs),
    /// Ridge-trained models on a band-limited target, swept over M
    Train(RunArgs),
    /// Rank of the Fourier coefficient matrix against its ceiling
    Expressivity(RunArgs),
    /// Concentration measurements (kind = encoding | reservoir | entanglement | global | noise)
    Concentration(RunArgs),
    /// Empirical moments of Haar-reservoir Fourier coefficients
    Haarstats(RunArgs),
    /// Biased-coin discrimination success rates
    Hypothesis(RunArgs),
    /// Classical surrogates replaying a trained model's spectrum
    Surrogate(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// JSON config file; omitting it runs the desk-scale preset
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed override
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory (default: the config's `out`, then "qelm-out")
    #[arg(long)]
    out: Option<PathBuf>,
    /// Dotted-path config override like n_samples=500 or reservoir.haar.seed=3 (repeatable)
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, args) = match &cli.command {
        Command::Spectrum(a) => ("spectrum", a),
        Command::Richness(a) => ("richness", a),
        Command::Train(a) => ("train", a),
        Command::Expressivity(a) => ("expressivity", a),
        Command::Concentration(a) => ("concentration", a),
        Command::Haarstats(a) => ("haarstats", a),
        Command::Hypothesis(a) => ("hypothesis", a),
        Command::Surrogate(a) => ("surrogate", a),
    };
    match execute(name, args) {
        Ok(arts) => {
            println!("wrote {} ({} rows)", arts.csv_path.display(), arts.rows);
            println!("wrote {}", arts.manifest_path.display());
            ExitCode::SUCCESS
        }
        Err(Error::Budget(msg)) => {
            eprintln!("budget refused: {msg}");
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn execute(name: &str, args: &RunArgs) -> Result<RunArtifacts, Error> {
    let mut value: Value = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)?;
            serde_json::from_str(&text)
                .map_err(|e| Error::Config(format!("config is not JSON: {e}")))?
        }
        None => serde_json::to_value(ExperimentConfig::preset(name).expect("known subcommand"))
            .expect("presets serialize"),
    };

    match value.get("experiment").and_then(Value::as_str) {
        Some(tag) if tag == name => {}
        Some(tag) => {
            return Err(Error::Config(format!(
                "config describes experiment {tag:?} but the subcommand is {name:?}"
            )))
        }
        None => return Err(Error::Config("config lacks the experiment field".into())),
    }

    for assignment in &args.set {
        apply_override(&mut value, assignment)?;
    }
    if let Some(seed) = args.seed {
        apply_override(&mut value, &format!("seed={seed}"))?;
    }

    let config = ExperimentConfig::from_value(value)?;
    let out_dir = args
        .out
        .clone()
        .or_else(|| config.out().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("qelm-out"));
    run(&config, &out_dir)
}
