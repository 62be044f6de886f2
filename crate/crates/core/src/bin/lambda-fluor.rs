use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use lambda_fluor::checks;
use lambda_fluor::cli::{self, Preset, RunConfig};
use lambda_fluor::{Error, Result};

/// Steady state, squeezing spectra and total variance of a driven Λ atom.
#[derive(Debug, Parser)]
#[command(version)]
struct Args {
    /// key=value run configuration
    #[arg(long, conflicts_with_all = ["preset", "check"])]
    config: Option<PathBuf>,

    /// reproduce one of the stored parameter sets
    #[arg(long, requires = "output", conflicts_with = "check")]
    preset: Option<Preset>,

    /// CSV output path for --preset
    #[arg(long)]
    output: Option<PathBuf>,

    /// run the built-in invariant suite
    #[arg(long)]
    check: bool,

    /// seed of the random samples used by --check
    #[arg(long, default_value_t = 2024)]
    seed: u64,
}

fn run(args: Args) -> Result<bool> {
    if args.check {
        let results = checks::run_checks(args.seed, 100);
        for c in &results {
            println!(
                "{} {}: {}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.detail
            );
        }
        return Ok(results.iter().all(|c| c.passed));
    }
    let config = match (args.config, args.preset, args.output) {
        (Some(path), _, _) => {
            let text = std::fs::read_to_string(&path).map_err(|source| Error::Io {
                context: format!("reading {}", path.display()),
                source,
            })?;
            cli::parse_config(&text)?
        }
        (None, Some(preset), Some(output)) => RunConfig::for_preset(preset, output),
        _ => {
            return Err(Error::Validation {
                key: "arguments".into(),
                message: "expected --config <path>, --preset <name> --output <path>, or --check"
                    .into(),
            })
        }
    };
    let outcome = cli::run(&config)?;
    for f in &outcome.files {
        println!("{}", f.display());
    }
    if !outcome.checks_passed {
        log::warn!("steady-state checks failed for this parameter set");
    }
    Ok(true)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Args::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
