use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid interval [{lo}, {hi}] with base point {c}")]
    InvalidInterval { lo: f64, hi: f64, c: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("grid is empty after excluding the base point")]
    EmptyGrid,

    #[error("point {x} (or its stencil) lies outside the domain")]
    Domain { x: f64 },

    #[error("quadrature did not converge on [{a}, {b}]: estimate {estimate}, error {error:e}")]
    NonConvergence {
        a: f64,
        b: f64,
        estimate: f64,
        error: f64,
    },

    #[error("integrand is not finite at t = {x}")]
    NonFinite { x: f64 },

    #[error("order {n} exceeds the supported maximum {max}")]
    OrderTooLarge { n: usize, max: usize },

    #[error("function `{name}` has {have} derivatives, {need} required")]
    InsufficientDerivatives {
        name: String,
        have: usize,
        need: usize,
    },

    #[error("evaluation point {x} is within {gap:e} of the base point")]
    BasePoint { x: f64, gap: f64 },

    #[error("too few samples: {got} (need at least {need})")]
    TooFewSamples { got: usize, need: usize },

    #[error("sample abscissae are not strictly increasing at index {index}")]
    UnorderedSamples { index: usize },

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("derivative of order {order} of `{name}` vanishes on the sample grid")]
    VanishingDerivative { name: String, order: usize },

    #[error("state left the unit cube at t = {t}: (S, I, R) = ({s}, {i}, {r})")]
    Instability { t: f64, s: f64, i: f64, r: f64 },

    #[error("dimension {0} is not supported")]
    Dimension(usize),

    #[error("constant-free and constant-weighted ratios disagree by {0:e}")]
    ConstantMismatch(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
