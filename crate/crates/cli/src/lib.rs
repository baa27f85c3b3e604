//! Batch runner for the monofrac verification suites: reads a JSON suite
//! configuration, runs the selected suites and writes a JSON report, a
//! summary CSV and one CSV per sampled curve.

pub mod config;
pub mod report;
pub mod suites;

use std::path::PathBuf;

pub use config::{SuiteConfig, SuiteName};
pub use report::{CaseRecord, Curve, RunReport};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("I/O error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub const EXIT_PASS: u8 = 0;
pub const EXIT_CASE_FAILURE: u8 = 1;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_IO: u8 = 3;

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Io { .. } => EXIT_IO,
        }
    }
}

/// Runs every requested suite in the configured order. Nothing is written.
pub fn execute(config: &SuiteConfig) -> Result<(RunReport, Vec<Curve>), CliError> {
    config.validate()?;
    let ctx = suites::Context {
        check: config.check_config()?,
        grid: config.grid_size,
        seed: config.seed,
        mc_samples: config.mc_samples,
        cases: config.cases.clone(),
    };
    let mut suites = config.suites.clone();
    suites.dedup();
    let mut records = Vec::new();
    let mut curves = Vec::new();
    for suite in suites {
        let (r, c) = suites::run_suite(suite, &ctx);
        records.extend(r);
        curves.extend(c);
    }
    Ok((RunReport::new(config.clone(), records), curves))
}

/// [`execute`], then writes all output files under `config.output_dir`.
pub fn run(config: &SuiteConfig) -> Result<RunReport, CliError> {
    let (report, curves) = execute(config)?;
    report::write_all(&config.output_dir, &report, &curves)?;
    Ok(report)
}
