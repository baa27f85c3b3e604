use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use monofrac_cli::{CliError, SuiteConfig, SuiteName, EXIT_CASE_FAILURE, EXIT_PASS};

/// Runs the monofrac verification suites and writes JSON/CSV reports.
#[derive(Debug, Parser)]
#[command(name = "verify", version)]
struct Args {
    /// JSON suite configuration.
    #[arg(long, required_unless_present = "list_suites")]
    config: Option<PathBuf>,
    /// Run only these suites (repeatable); replaces the configured list.
    #[arg(long = "suite", value_enum)]
    suites: Vec<SuiteName>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    /// Grid size for the sampled checks.
    #[arg(long)]
    grid: Option<usize>,
    /// Print the suite names and exit.
    #[arg(long)]
    list_suites: bool,
}

fn load(args: &Args) -> Result<SuiteConfig, CliError> {
    let path = args.config.as_deref().expect("clap requires --config");
    let mut config = SuiteConfig::load(path)?;
    if !args.suites.is_empty() {
        config.suites = args.suites.clone();
    }
    if let Some(out) = &args.out {
        config.output_dir = out.clone();
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(grid) = args.grid {
        config.grid_size = grid;
    }
    Ok(config)
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.list_suites {
        for s in SuiteName::ALL {
            println!("{s}");
        }
        return ExitCode::from(EXIT_PASS);
    }
    let report = match load(&args).and_then(|c| monofrac_cli::run(&c)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("verify: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    let failed: Vec<_> = report.failures().collect();
    for f in &failed {
        eprintln!(
            "FAIL [{}] {}{}",
            f.suite,
            f.case,
            f.detail
                .as_deref()
                .map(|d| format!(": {d}"))
                .unwrap_or_default()
        );
    }
    println!(
        "{} cases, {} failed; report in {}",
        report.cases.len(),
        failed.len(),
        report.config.output_dir.display()
    );
    ExitCode::from(if report.pass {
        EXIT_PASS
    } else {
        EXIT_CASE_FAILURE
    })
}
