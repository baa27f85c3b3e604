//! High-order antiderivatives, means and Taylor remainders, together with
//! sampling-based certification of the fraction rules for monotonicity and
//! their applications.
//!
//! The main entry points are re-exported at the crate root.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod applications;
pub mod battery;
pub mod calculus;
pub mod error;
pub mod interval;
pub mod monotone;
pub mod quad;

pub use calculus::{
    antideriv_cauchy, antideriv_repeated, antideriv_semigroup_check, factorial, mean,
    remainder_integral_check, taylor_poly, taylor_remainder, taylor_remainder_deriv, AntiderivSpec,
};
pub use error::{Error, Result};
pub use interval::{finite_diff, finite_diff_in, make_grid, Grid, Interval, RealFn};
pub use monotone::{
    inherits, monotonicity_of, monotonicity_with, sign_check, verify_gromov, verify_lhopital,
    verify_mean_convex, verify_mean_monotone, zero_set_check_a, zero_set_check_r, CheckConfig,
    MonotonicityReport, Sign, TheoremCase, Thresholds, Verdict, Violation,
};
pub use quad::{integrate, integrate_fn, QuadConfig, QuadMethod};
