//! Worked applications of the fraction rules: the SIR outbreak and radial
//! integrals over balls.

pub mod interp;
pub mod lambert;
pub mod radial;
pub mod sir;

pub use interp::Pchip;
pub use lambert::lambert_w0;
pub use radial::{
    battery as radial_battery, gamma_half, monte_carlo_ball, monte_carlo_ball_of, radial_integral,
    radial_integral_of, sphere_constant, verify_radial_monotone, RadialCase,
};
pub use sir::{
    battery as sir_battery, chord_bases, chord_ratios, conserved_quantity, final_size_formula,
    sir_apriori_check, sir_final_size, sir_integrate, sir_mean_apriori_check,
    sir_mean_apriori_gaps, SirParams, SirState, SirTrajectory,
};
