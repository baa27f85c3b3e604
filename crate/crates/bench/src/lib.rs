//! Benchmark fixtures shared by the criterion benches.

use monofrac_core::applications::SirParams;
use monofrac_core::{battery, AntiderivSpec, Interval, RealFn};

/// `1/(1+t²)`, the least polynomial-like member of the battery.
pub fn integrand() -> RealFn {
    battery::lorentz()
}

pub fn antideriv_spec(n: usize) -> AntiderivSpec {
    AntiderivSpec::new(
        n,
        integrand(),
        Interval::new(-1.0, 1.0, 0.0).expect("valid interval"),
    )
    .expect("n >= 1")
}

pub fn outbreak() -> SirParams {
    SirParams::new(2.0, 0.99, 0.01, 0.0).expect("valid outbreak")
}
