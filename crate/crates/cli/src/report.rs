//! Run report, summary and curve files.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::config::{SuiteConfig, SuiteName};
use crate::CliError;

pub const REPORT_FILE: &str = "report.json";
pub const SUMMARY_FILE: &str = "summary.csv";
pub const CURVE_DIR: &str = "curves";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseRecord {
    pub suite: SuiteName,
    pub case: String,
    /// Named verdicts, e.g. `hypothesis` and `conclusion` for the theorem suites.
    pub verdicts: BTreeMap<String, String>,
    /// Largest amount by which any sample misses its requirement; zero on a pass.
    pub max_violation: f64,
    pub wall_time_ms: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    /// Curve file relative to the output directory.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub curve: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub pass: bool,
    pub config: SuiteConfig,
    pub cases: Vec<CaseRecord>,
}

impl RunReport {
    pub fn new(config: SuiteConfig, cases: Vec<CaseRecord>) -> Self {
        Self {
            tool: "verify",
            version: env!("CARGO_PKG_VERSION"),
            pass: cases.iter().all(|c| c.pass),
            config,
            cases,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CaseRecord> {
        self.cases.iter().filter(|c| !c.pass)
    }
}

/// A sampled curve; `None` cells are written empty.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub file: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Option<f64>>>,
}

impl Curve {
    pub fn new(file: String, columns: Vec<&'static str>) -> Self {
        Self {
            file,
            columns,
            rows: Vec::new(),
        }
    }
}

/// 17 significant digits.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn csv_err(path: &Path) -> impl FnOnce(csv::Error) -> CliError + '_ {
    move |e| CliError::Io {
        path: path.to_path_buf(),
        source: e.into(),
    }
}

fn csv_writer(path: &Path) -> Result<csv::Writer<fs::File>, CliError> {
    let file = fs::File::create(path).map_err(io_err(path))?;
    Ok(csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(file))
}

pub fn write_curve(dir: &Path, curve: &Curve) -> Result<PathBuf, CliError> {
    let path = dir.join(&curve.file);
    let mut w = csv_writer(&path)?;
    w.write_record(&curve.columns).map_err(csv_err(&path))?;
    for row in &curve.rows {
        w.write_record(row.iter().map(|v| v.map(format_value).unwrap_or_default()))
            .map_err(csv_err(&path))?;
    }
    w.flush().map_err(io_err(&path))?;
    Ok(path)
}

/// One row per case: suite, case id, pass flag, verdicts and violation.
/// Wall times stay in the JSON report so the CSV files are reproducible.
pub fn write_summary(dir: &Path, report: &RunReport) -> Result<PathBuf, CliError> {
    let path = dir.join(SUMMARY_FILE);
    let mut w = csv_writer(&path)?;
    w.write_record(["suite", "case", "pass", "verdicts", "max_violation"])
        .map_err(csv_err(&path))?;
    for c in &report.cases {
        let verdicts = c
            .verdicts
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";");
        w.write_record([
            c.suite.as_str(),
            &c.case,
            if c.pass { "true" } else { "false" },
            &verdicts,
            &format_value(c.max_violation),
        ])
        .map_err(csv_err(&path))?;
    }
    w.flush().map_err(io_err(&path))?;
    Ok(path)
}

pub fn write_report(dir: &Path, report: &RunReport) -> Result<PathBuf, CliError> {
    let path = dir.join(REPORT_FILE);
    let mut text = serde_json::to_string_pretty(report).expect("report serializes");
    text.push('\n');
    fs::write(&path, text).map_err(io_err(&path))?;
    Ok(path)
}

/// Writes the report, the summary and every curve under `dir`.
pub fn write_all(dir: &Path, report: &RunReport, curves: &[Curve]) -> Result<(), CliError> {
    fs::create_dir_all(dir.join(CURVE_DIR)).map_err(io_err(dir))?;
    for curve in curves {
        write_curve(dir, curve)?;
    }
    write_summary(dir, report)?;
    write_report(dir, report)?;
    Ok(())
}
