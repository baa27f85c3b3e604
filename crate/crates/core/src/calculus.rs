//! High-order antiderivatives, means, and Taylor remainders.
//!
//! The antiderivative of order `n` of `f` at `c` is
//!
//! ```text
//! A(n, f, c)(x) = 1/(n-1)! ∫_c^x f(t) (x - t)^(n-1) dt
//! ```
//!
//! which equals the `n`-fold repeated integral of `f` from `c`. Both routes are
//! implemented so that one can serve as an oracle for the other.

use std::cell::RefCell;

use crate::error::{Error, Result};
use crate::interval::{Interval, RealFn};
use crate::quad::{integrate_fn, QuadConfig, QuadMethod};

/// Highest order accepted by [`antideriv_repeated`].
pub const MAX_REPEATED_ORDER: usize = 4;

/// `n!` as an exact integer product for `n <= 20`, then continued in floating point.
pub fn factorial(n: usize) -> f64 {
    let exact = n.min(20);
    let mut p: u64 = 1;
    for k in 2..=exact as u64 {
        p *= k;
    }
    let mut out = p as f64;
    for k in 21..=n {
        out *= k as f64;
    }
    out
}

/// Order, integrand and interval of a high-order antiderivative. The base point is `iv.c()`.
#[derive(Debug, Clone)]
pub struct AntiderivSpec {
    pub n: usize,
    pub f: RealFn,
    pub iv: Interval,
}

impl AntiderivSpec {
    pub fn new(n: usize, f: RealFn, iv: Interval) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument(
                "antiderivative order must be >= 1".into(),
            ));
        }
        Ok(Self { n, f, iv })
    }

    pub fn c(&self) -> f64 {
        self.iv.c()
    }

    fn check_point(&self, x: f64) -> Result<()> {
        if self.iv.contains(x) {
            Ok(())
        } else {
            Err(Error::Domain { x })
        }
    }
}

/// `∫_c^x f(t) (x-t)^(n-1) dt`, without the factorial.
fn weighted_integral(n: usize, f: &RealFn, c: f64, x: f64, cfg: &QuadConfig) -> Result<f64> {
    let p = (n - 1) as i32;
    let est = integrate_fn(|t| f.eval(t) * (x - t).powi(p), f.exclusions(), c, x, cfg)?;
    Ok(est.value)
}

/// Single weighted integral form of the order-`n` antiderivative. Exactly zero at `x = c`.
pub fn antideriv_cauchy(spec: &AntiderivSpec, x: f64, cfg: &QuadConfig) -> Result<f64> {
    spec.check_point(x)?;
    if x == spec.c() {
        return Ok(0.0);
    }
    Ok(weighted_integral(spec.n, &spec.f, spec.c(), x, cfg)? / factorial(spec.n - 1))
}

/// Nested repeated-integral form of the order-`n` antiderivative, `n <= 4`.
///
/// Every level is integrated with the adaptive Gauss–Legendre rule, whatever
/// `cfg.method` says, so this route shares neither the weight nor the rule
/// with [`antideriv_cauchy`]. Each level starts from a single panel, since
/// the cost multiplies across levels.
pub fn antideriv_repeated(spec: &AntiderivSpec, x: f64, cfg: &QuadConfig) -> Result<f64> {
    if spec.n > MAX_REPEATED_ORDER {
        return Err(Error::OrderTooLarge {
            n: spec.n,
            max: MAX_REPEATED_ORDER,
        });
    }
    spec.check_point(x)?;
    let cfg = QuadConfig {
        min_intervals: 1,
        ..cfg.with_method(QuadMethod::AdaptiveGauss)
    };
    nested(&spec.f, spec.c(), spec.n, x, &cfg)
}

fn nested(f: &RealFn, c: f64, level: usize, x: f64, cfg: &QuadConfig) -> Result<f64> {
    if x == c {
        return Ok(0.0);
    }
    if level == 1 {
        return Ok(integrate_fn(|t| f.eval(t), f.exclusions(), c, x, cfg)?.value);
    }
    let failure: RefCell<Option<Error>> = RefCell::new(None);
    let inner = |t: f64| match nested(f, c, level - 1, t, cfg) {
        Ok(v) => v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            f64::NAN
        }
    };
    let out = integrate_fn(inner, &[], c, x, cfg);
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(out?.value)
}

/// Returns `(A(n, f, c)(x), A(k, A(n-k, f, c), c)(x))`.
///
/// The inner antiderivative is wrapped as a [`RealFn`] and integrated again
/// by the weighted rule; evaluation failures inside it surface as
/// [`Error::NonFinite`].
pub fn antideriv_semigroup_check(
    spec: &AntiderivSpec,
    k: usize,
    x: f64,
    cfg: &QuadConfig,
) -> Result<(f64, f64)> {
    if spec.n < 2 || k == 0 || k >= spec.n {
        return Err(Error::InvalidArgument(format!(
            "semigroup split needs 1 <= k <= n-1, got k = {k}, n = {}",
            spec.n
        )));
    }
    let direct = antideriv_cauchy(spec, x, cfg)?;
    let inner_spec = AntiderivSpec::new(spec.n - k, spec.f.clone(), spec.iv)?;
    let inner_cfg = *cfg;
    let inner = RealFn::new(format!("A({}, {})", spec.n - k, spec.f.name()), move |t| {
        antideriv_cauchy(&inner_spec, t, &inner_cfg).unwrap_or(f64::NAN)
    });
    let outer = AntiderivSpec::new(k, inner, spec.iv)?;
    let composed = antideriv_cauchy(&outer, x, cfg)?;
    Ok((direct, composed))
}

/// Mean of order `n`: `n/(x-c)^n ∫_c^x f(t)(x-t)^(n-1) dt`, undefined within `δ_c` of `c`.
pub fn mean(n: usize, f: &RealFn, iv: &Interval, x: f64, cfg: &QuadConfig) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("mean order must be >= 1".into()));
    }
    if !iv.contains(x) {
        return Err(Error::Domain { x });
    }
    if iv.is_near_base(x) {
        return Err(Error::BasePoint {
            x,
            gap: iv.base_gap(),
        });
    }
    let c = iv.c();
    let integral = weighted_integral(n, f, c, x, cfg)?;
    Ok(n as f64 * integral / (x - c).powi(n as i32))
}

/// Taylor polynomial of degree `n` of `f` at `c`, from the derivative stack.
pub fn taylor_poly(n: usize, f: &RealFn, c: f64, x: f64) -> Result<f64> {
    f.require_derivs(n)?;
    let h = x - c;
    let mut term = 1.0;
    let mut sum = 0.0;
    for k in 0..=n {
        if k > 0 {
            term *= h / k as f64;
        }
        sum += f.deriv(k, c)? * term;
    }
    Ok(sum)
}

/// `f(x) - T(n, f, c)(x)`; exactly zero at `x = c`.
pub fn taylor_remainder(n: usize, f: &RealFn, c: f64, x: f64) -> Result<f64> {
    f.require_derivs(n)?;
    if x == c {
        return Ok(0.0);
    }
    Ok(f.eval(x) - taylor_poly(n, f, c, x)?)
}

/// `k`-th derivative of the remainder `R(n, f, c)`, i.e. `f^(k) - T^(k)`.
///
/// `T^(k)(x) = Σ_{j=k..n} f^(j)(c)/(j-k)! (x-c)^(j-k)`, zero for `k > n`.
pub fn taylor_remainder_deriv(n: usize, k: usize, f: &RealFn, c: f64, x: f64) -> Result<f64> {
    f.require_derivs(n.max(k))?;
    if x == c && k <= n {
        return Ok(0.0);
    }
    let h = x - c;
    let mut poly = 0.0;
    if k <= n {
        let mut term = 1.0;
        for j in k..=n {
            if j > k {
                term *= h / (j - k) as f64;
            }
            poly += f.deriv(j, c)? * term;
        }
    }
    Ok(f.deriv(k, x)? - poly)
}

/// Returns `(R(n-1, f, c)(x), A(n, f^(n), c)(x))`, the two sides of the
/// integral form of the Taylor remainder.
pub fn remainder_integral_check(
    n: usize,
    f: &RealFn,
    iv: &Interval,
    x: f64,
    cfg: &QuadConfig,
) -> Result<(f64, f64)> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "remainder check needs n >= 1".into(),
        ));
    }
    f.require_derivs(n)?;
    let c = iv.c();
    let remainder = taylor_remainder(n - 1, f, c, x)?;
    let spec = AntiderivSpec::new(n, f.derivative(n)?, *iv)?;
    Ok((remainder, antideriv_cauchy(&spec, x, cfg)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::E;

    fn iv(lo: f64, hi: f64, c: f64) -> Interval {
        Interval::new(lo, hi, c).unwrap()
    }

    fn spec(n: usize, f: RealFn, c: f64) -> AntiderivSpec {
        AntiderivSpec::new(n, f, iv(-1.0, 2.0, c)).unwrap()
    }

    fn cubic() -> RealFn {
        RealFn::new("t^3", |t| t * t * t)
            .with_derivative(|t| 3.0 * t * t)
            .with_derivative(|t| 6.0 * t)
            .with_derivative(|_| 6.0)
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), 1.0);
        assert_eq!(factorial(1), 1.0);
        assert_eq!(factorial(5), 120.0);
        assert_eq!(factorial(20), 2_432_902_008_176_640_000.0);
        assert!((factorial(22) / (21.0 * 22.0 * factorial(20)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cauchy_examples() {
        let cfg = QuadConfig::default();
        let one = RealFn::constant(1.0);
        assert_abs_diff_eq!(
            antideriv_cauchy(&spec(2, one.clone(), 0.0), 1.0, &cfg).unwrap(),
            0.5,
            epsilon = 1e-14
        );
        assert_abs_diff_eq!(
            antideriv_cauchy(&spec(2, RealFn::identity(), 0.0), 1.0, &cfg).unwrap(),
            1.0 / 6.0,
            epsilon = 1e-14
        );
        for n in 1..=4 {
            assert_eq!(
                antideriv_cauchy(&spec(n, RealFn::exp(), 0.5), 0.5, &cfg).unwrap(),
                0.0
            );
        }
        assert!(antideriv_cauchy(&spec(2, one, 0.0), 3.0, &cfg).is_err());
    }

    #[test]
    fn repeated_examples() {
        let cfg = QuadConfig::default();
        let one = RealFn::constant(1.0);
        assert_abs_diff_eq!(
            antideriv_repeated(&spec(2, one.clone(), 0.0), 1.0, &cfg).unwrap(),
            0.5,
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(
            antideriv_repeated(&spec(3, one.clone(), 0.0), 1.0, &cfg).unwrap(),
            1.0 / 6.0,
            epsilon = 1e-13
        );
        assert_abs_diff_eq!(
            antideriv_repeated(&spec(2, RealFn::exp(), 0.0), 1.0, &cfg).unwrap(),
            E - 2.0,
            epsilon = 1e-10
        );
        assert!(matches!(
            antideriv_repeated(&spec(5, one, 0.0), 1.0, &cfg),
            Err(Error::OrderTooLarge { n: 5, max: 4 })
        ));
    }

    #[test]
    fn semigroup_examples() {
        let cfg = QuadConfig::default();
        let (a, b) =
            antideriv_semigroup_check(&spec(2, RealFn::constant(1.0), 0.0), 1, 1.0, &cfg).unwrap();
        assert_abs_diff_eq!(a, 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(b, 0.5, epsilon = 1e-12);

        let (a, b) =
            antideriv_semigroup_check(&spec(3, RealFn::identity(), 0.0), 1, 1.0, &cfg).unwrap();
        assert_abs_diff_eq!(a, 1.0 / 24.0, epsilon = 1e-12);
        assert_abs_diff_eq!(b, 1.0 / 24.0, epsilon = 1e-10);

        let (a, b) = antideriv_semigroup_check(&spec(2, RealFn::exp(), 0.0), 1, 1.0, &cfg).unwrap();
        assert_abs_diff_eq!(a, E - 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(a, b, epsilon = 1e-9);

        assert!(antideriv_semigroup_check(&spec(2, RealFn::exp(), 0.0), 2, 1.0, &cfg).is_err());
        assert!(antideriv_semigroup_check(&spec(1, RealFn::exp(), 0.0), 1, 1.0, &cfg).is_err());
    }

    #[test]
    fn mean_examples() {
        let cfg = QuadConfig::default();
        let i = iv(-1.0, 3.0, 0.0);
        for n in 1..=4 {
            for x in [-0.7, 0.4, 2.5] {
                assert_abs_diff_eq!(
                    mean(n, &RealFn::constant(3.5), &i, x, &cfg).unwrap(),
                    3.5,
                    epsilon = 1e-12
                );
                assert_abs_diff_eq!(
                    mean(n, &RealFn::identity(), &i, x, &cfg).unwrap(),
                    x / (n as f64 + 1.0),
                    epsilon = 1e-12
                );
            }
        }
        assert_abs_diff_eq!(
            mean(1, &RealFn::identity(), &i, 2.0, &cfg).unwrap(),
            1.0,
            epsilon = 1e-14
        );
        assert!(matches!(
            mean(2, &RealFn::identity(), &i, 1e-12, &cfg),
            Err(Error::BasePoint { .. })
        ));
        assert!(mean(2, &RealFn::identity(), &i, 0.0, &cfg).is_err());
    }

    #[test]
    fn taylor_examples() {
        let e = RealFn::exp();
        assert_eq!(taylor_poly(0, &e, 0.3, 5.0).unwrap(), 0.3f64.exp());
        assert_abs_diff_eq!(taylor_poly(2, &e, 0.0, 1.0).unwrap(), 2.5, epsilon = 1e-15);
        for x in [-2.0, 0.1, 3.0] {
            assert_abs_diff_eq!(
                taylor_poly(3, &cubic(), 0.7, x).unwrap(),
                x * x * x,
                epsilon = 1e-12
            );
            assert_abs_diff_eq!(
                taylor_remainder(3, &cubic(), 0.7, x).unwrap(),
                0.0,
                epsilon = 1e-12
            );
        }
        assert_abs_diff_eq!(
            taylor_remainder(2, &e, 0.0, 1.0).unwrap(),
            E - 2.5,
            epsilon = 1e-15
        );
        assert_eq!(taylor_remainder(2, &e, 0.4, 0.4).unwrap(), 0.0);
        assert!(matches!(
            taylor_poly(4, &cubic(), 0.0, 1.0),
            Err(Error::InsufficientDerivatives {
                have: 3,
                need: 4,
                ..
            })
        ));
        assert!(taylor_remainder(4, &cubic(), 0.0, 1.0).is_err());
    }

    #[test]
    fn remainder_derivatives_match_closed_form() {
        // R(1, exp, 0) = e^x - 1 - x, R' = e^x - 1, R'' = e^x
        let e = RealFn::exp();
        for x in [-1.0, 0.3, 1.7] {
            let ex: f64 = f64::exp(x);
            assert_abs_diff_eq!(
                taylor_remainder_deriv(1, 0, &e, 0.0, x).unwrap(),
                ex - 1.0 - x,
                epsilon = 1e-14
            );
            assert_abs_diff_eq!(
                taylor_remainder_deriv(1, 1, &e, 0.0, x).unwrap(),
                ex - 1.0,
                epsilon = 1e-14
            );
            assert_abs_diff_eq!(
                taylor_remainder_deriv(1, 2, &e, 0.0, x).unwrap(),
                ex,
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn remainder_integral_examples() {
        let cfg = QuadConfig::default();
        let i = iv(-1.0, 2.0, 0.0);
        let (r, a) = remainder_integral_check(2, &RealFn::exp(), &i, 1.0, &cfg).unwrap();
        assert_abs_diff_eq!(r, E - 2.0, epsilon = 1e-14);
        assert_abs_diff_eq!(a, E - 2.0, epsilon = 1e-9);
        let (r, a) = remainder_integral_check(2, &cubic(), &i, 1.0, &cfg).unwrap();
        assert_abs_diff_eq!(r, 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(a, 1.0, epsilon = 1e-12);
        assert_eq!(
            remainder_integral_check(3, &cubic(), &i, 0.0, &cfg).unwrap(),
            (0.0, 0.0)
        );
        assert!(remainder_integral_check(4, &cubic(), &i, 1.0, &cfg).is_err());
    }
}
