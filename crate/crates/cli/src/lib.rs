//! Command-line front end: configuration resolution, the scenario suite,
//! and the exact optimality check, with CSV/JSON artifacts.

pub mod config;
pub mod run;

pub use config::{parse_config, Parsed, RunConfig, ScenarioSelector};
pub use run::{csv_path, run, scenario_seed, CSV_HEADER};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Io(String),
    #[error("verification failed: some non-fixed grammar reached zero expected distance")]
    VerificationFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 1,
            CliError::Io(_) => 2,
            CliError::VerificationFailed => 3,
        }
    }
}

/// Parse arguments and run; `Ok` means exit code 0.
pub fn run_cli<I: IntoIterator<Item = String>>(args: I) -> Result<(), CliError> {
    match parse_config(args)? {
        Parsed::Help => Ok(()),
        Parsed::Run(config) => run::run(&config),
    }
}
