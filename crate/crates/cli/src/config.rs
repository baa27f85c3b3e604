//! JSON run configuration.
//!
//! ```json
//! {
//!   "suites": ["gromov", "sir"],
//!   "tolerances": { "rel_tol": 1e-10, "tau_strict_rel": 1e-9 },
//!   "grid_size": 33,
//!   "output_dir": "out",
//!   "seed": 1,
//!   "cases": { "gromov": [{ "f": "exp", "g": "one", "n": 2, "lo": 0, "hi": 2, "c": 0 }] }
//! }
//! ```
//!
//! Everything except `suites` is optional.

use std::fmt;
use std::path::{Path, PathBuf};

use monofrac_core::applications::{RadialCase, SirParams};
use monofrac_core::{
    battery, CheckConfig, Interval, QuadConfig, QuadMethod, RealFn, TheoremCase, Thresholds,
};
use serde::{Deserialize, Serialize};

use crate::CliError;

pub const DEFAULT_GRID: usize = 33;
pub const MIN_GRID: usize = 8;
pub const DEFAULT_OUTPUT_DIR: &str = "out";
pub const DEFAULT_MC_SAMPLES: usize = 1_000_000;

#[derive(
    Debug,
    Clone,
    Copy,
    PartialEq,
    Eq,
    PartialOrd,
    Ord,
    Hash,
    Serialize,
    Deserialize,
    clap::ValueEnum,
)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum SuiteName {
    CalculusOracles,
    Gromov,
    Lhopital,
    ZeroSets,
    MeanCorollaries,
    Sir,
    Radial,
}

impl SuiteName {
    pub const ALL: [SuiteName; 7] = [
        SuiteName::CalculusOracles,
        SuiteName::Gromov,
        SuiteName::Lhopital,
        SuiteName::ZeroSets,
        SuiteName::MeanCorollaries,
        SuiteName::Sir,
        SuiteName::Radial,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SuiteName::CalculusOracles => "calculus_oracles",
            SuiteName::Gromov => "gromov",
            SuiteName::Lhopital => "lhopital",
            SuiteName::ZeroSets => "zero_sets",
            SuiteName::MeanCorollaries => "mean_corollaries",
            SuiteName::Sir => "sir",
            SuiteName::Radial => "radial",
        }
    }
}

impl fmt::Display for SuiteName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Simpson,
    Gauss,
}

/// Optional overrides; unset fields keep the library defaults.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<Method>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abs_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_depth: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_intervals: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_strict_rel: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tau_zero_rel: Option<f64>,
}

/// Two battery functions on an interval, by name.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairCase {
    pub f: String,
    pub g: String,
    pub n: usize,
    pub lo: f64,
    pub hi: f64,
    pub c: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SirCase {
    pub r0: f64,
    pub s0: f64,
    pub i0: f64,
    #[serde(default)]
    pub rec0: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_end: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RadialSpec {
    pub dim: usize,
    pub f: String,
    pub g: String,
    #[serde(default = "unit")]
    pub r_max: f64,
}

fn unit() -> f64 {
    1.0
}

/// Cases run in addition to the standard battery.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UserCases {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gromov: Vec<PairCase>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub lhopital: Vec<PairCase>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sir: Vec<SirCase>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub radial: Vec<RadialSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub suites: Vec<SuiteName>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default = "default_grid")]
    pub grid_size: usize,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_mc_samples")]
    pub mc_samples: usize,
    #[serde(default)]
    pub cases: UserCases,
}

fn default_grid() -> usize {
    DEFAULT_GRID
}

fn default_output_dir() -> PathBuf {
    PathBuf::from(DEFAULT_OUTPUT_DIR)
}

fn default_mc_samples() -> usize {
    DEFAULT_MC_SAMPLES
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Config(msg.into())
}

impl SuiteConfig {
    pub fn new(suites: Vec<SuiteName>) -> Self {
        Self {
            suites,
            tolerances: Tolerances::default(),
            grid_size: DEFAULT_GRID,
            output_dir: default_output_dir(),
            seed: 0,
            mc_samples: DEFAULT_MC_SAMPLES,
            cases: UserCases::default(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| bad(format!("malformed config: {e}")))
    }

    /// Reads and parses a config file. An unreadable file is a configuration error.
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| bad(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    /// Checks the invariants and resolves every user case.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.suites.is_empty() {
            return Err(bad("`suites` must list at least one suite"));
        }
        if self.grid_size < MIN_GRID {
            return Err(bad(format!(
                "`grid_size` must be at least {MIN_GRID}, got {}",
                self.grid_size
            )));
        }
        if self.mc_samples < 10_000 {
            return Err(bad(format!(
                "`mc_samples` must be at least 10000, got {}",
                self.mc_samples
            )));
        }
        self.check_config()?;
        for p in &self.cases.gromov {
            pair_case(p)?;
        }
        for p in &self.cases.lhopital {
            let case = pair_case(p)?;
            for f in [&case.f, &case.g] {
                if f.deriv_order() < case.n {
                    return Err(bad(format!(
                        "`{}` has no derivative of order {}",
                        f.name(),
                        case.n
                    )));
                }
            }
        }
        for s in &self.cases.sir {
            sir_params(s)?;
        }
        for r in &self.cases.radial {
            radial_case(r)?;
        }
        Ok(())
    }

    pub fn check_config(&self) -> Result<CheckConfig, CliError> {
        let t = &self.tolerances;
        let mut quad = QuadConfig::default();
        if let Some(m) = t.method {
            quad = quad.with_method(match m {
                Method::Simpson => QuadMethod::AdaptiveSimpson,
                Method::Gauss => QuadMethod::AdaptiveGauss,
            });
        }
        quad.abs_tol = t.abs_tol.unwrap_or(quad.abs_tol);
        quad.rel_tol = t.rel_tol.unwrap_or(quad.rel_tol);
        quad.max_depth = t.max_depth.unwrap_or(quad.max_depth);
        quad.min_intervals = t.min_intervals.unwrap_or(quad.min_intervals);
        quad.validate()
            .map_err(|e| bad(format!("tolerances: {e}")))?;

        let mut thresholds = Thresholds::default();
        for (field, value, slot) in [
            (
                "tau_strict_rel",
                t.tau_strict_rel,
                &mut thresholds.strict_rel,
            ),
            ("tau_zero_rel", t.tau_zero_rel, &mut thresholds.zero_rel),
        ] {
            if let Some(v) = value {
                if !(v >= 0.0 && v.is_finite()) {
                    return Err(bad(format!(
                        "tolerances: `{field}` must be finite and non-negative"
                    )));
                }
                *slot = v;
            }
        }
        Ok(CheckConfig { quad, thresholds })
    }
}

fn function(name: &str, c: f64) -> Result<RealFn, CliError> {
    battery::by_name(name, c).ok_or_else(|| {
        bad(format!(
            "unknown function `{name}` (expected one of {})",
            battery::NAMES.join(", ")
        ))
    })
}

pub(crate) fn pair_case(p: &PairCase) -> Result<TheoremCase, CliError> {
    let iv = Interval::new(p.lo, p.hi, p.c).map_err(|e| bad(e.to_string()))?;
    if p.n == 0 || p.n > 4 {
        return Err(bad(format!("order n must be in 1..=4, got {}", p.n)));
    }
    Ok(TheoremCase::new(
        function(&p.f, p.c)?,
        function(&p.g, p.c)?,
        p.n,
        iv,
    ))
}

pub(crate) fn sir_params(s: &SirCase) -> Result<SirParams, CliError> {
    let p = SirParams::new(s.r0, s.s0, s.i0, s.rec0).map_err(|e| bad(e.to_string()))?;
    p.with_steps(s.dt.unwrap_or(p.dt), s.t_end.unwrap_or(p.t_end))
        .map_err(|e| bad(e.to_string()))
}

pub(crate) fn radial_case(r: &RadialSpec) -> Result<RadialCase, CliError> {
    RadialCase::new(r.dim, function(&r.f, 0.0)?, function(&r.g, 0.0)?, r.r_max)
        .map_err(|e| bad(e.to_string()))
}
