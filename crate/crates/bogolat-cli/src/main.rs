//! Batch CLI for the lattice toolkit: scenario simulation, spectral
//! reconstruction, coefficient transformations, first-integral monitoring,
//! and the self-verification register.
//!
//! Results go to `--out` as CSV/JSON files; a one-line JSON summary goes to
//! stdout. Exit codes: 0 success, 1 numeric/domain failure (reported as
//! structured JSON on stdout), 2 configuration or usage errors.

mod config;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::json;

use config::ScenarioConfig;

#[derive(Debug)]
pub enum CliError {
    /// Bad configuration or environment — exit code 2.
    Config(String),
    /// The mathematics refused — exit code 1.
    Lib(bogolat::Error),
}

impl From<bogolat::Error> for CliError {
    fn from(e: bogolat::Error) -> Self {
        CliError::Lib(e)
    }
}

#[derive(Parser)]
#[command(
    name = "bogolat",
    version,
    about = "Integrable lattice toolkit: moment-method integration, spectral \
             reconstruction, lattice transformations, and first integrals"
)]
struct Cli {
    /// Directory for result files.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate a scenario (moment-series pipeline and/or direct RK4);
    /// writes trajectory.csv, moments.csv, trajectory_rk4.csv.
    Simulate {
        /// Scenario JSON file.
        #[arg(long)]
        config: PathBuf,
    },
    /// Recover coefficients from moments and compare with the input;
    /// writes reconstruct.json.
    Reconstruct {
        #[arg(long)]
        config: PathBuf,
    },
    /// Forward transformation of a product lattice, or seeded inverse of a
    /// sum-lattice trajectory; writes miura.json.
    Miura {
        #[arg(long)]
        config: PathBuf,
    },
    /// Finite-rank recurrence vectors and the characteristic polynomial;
    /// writes frc.json.
    Frc {
        #[arg(long)]
        config: PathBuf,
    },
    /// Drift of conserved quantities along a direct integration; writes
    /// integrals.json.
    Integrals {
        #[arg(long)]
        config: PathBuf,
    },
    /// Run the twelve-point self-verification register; writes verify.json.
    Verify {
        /// Seed for all randomized draws (a fixed seed reproduces exactly).
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

fn execute(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Simulate { config } => {
            let cfg = ScenarioConfig::load(&config)?;
            println!("{}", run::cmd_simulate(&cfg, &cli.out)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Reconstruct { config } => {
            let cfg = ScenarioConfig::load(&config)?;
            println!("{}", run::cmd_reconstruct(&cfg, &cli.out)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Miura { config } => {
            let cfg = ScenarioConfig::load(&config)?;
            println!("{}", run::cmd_miura(&cfg, &cli.out)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Frc { config } => {
            let cfg = ScenarioConfig::load(&config)?;
            println!("{}", run::cmd_frc(&cfg, &cli.out)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Integrals { config } => {
            let cfg = ScenarioConfig::load(&config)?;
            println!("{}", run::cmd_integrals(&cfg, &cli.out)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { seed } => {
            let (report, code) = run::cmd_verify(seed, &cli.out)?;
            println!("{report}");
            Ok(ExitCode::from(code as u8))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => code,
        Err(CliError::Config(detail)) => {
            println!(
                "{}",
                json!({ "status": "error", "kind": "Config", "detail": detail })
            );
            ExitCode::from(2)
        }
        Err(CliError::Lib(e)) => {
            println!(
                "{}",
                json!({
                    "status": "error",
                    "kind": e.kind(),
                    "detail": e.to_string(),
                    "index": e.index(),
                })
            );
            ExitCode::from(1)
        }
    }
}
