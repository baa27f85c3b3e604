//! Intervals with a distinguished base point, evaluable scalar functions
//! carrying an analytic derivative stack, and sampling grids.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Relative width of the gap kept around the base point, see [`Interval::base_gap`].
pub const BASE_GAP_REL: f64 = 1e-9;

/// A bounded closed interval `[lo, hi]` with a base point `c` inside it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
    c: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64, c: f64) -> Result<Self> {
        let finite = lo.is_finite() && hi.is_finite() && c.is_finite();
        if !finite || lo >= hi || c < lo || c > hi {
            return Err(Error::InvalidInterval { lo, hi, c });
        }
        Ok(Self { lo, hi, c })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Same bounds, different base point.
    pub fn with_base(&self, c: f64) -> Result<Self> {
        Self::new(self.lo, self.hi, c)
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }

    /// Half-width `δ_c` of the neighbourhood of `c` that grids stay out of.
    pub fn base_gap(&self) -> f64 {
        BASE_GAP_REL * self.width()
    }

    pub fn is_near_base(&self, x: f64) -> bool {
        (x - self.c).abs() < self.base_gap()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}] @ {}", self.lo, self.hi, self.c)
    }
}

/// Shared scalar closure.
pub type Scalar = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A real function of one variable.
///
/// `derivs[k - 1]` is trusted to be the `k`-th derivative. Points listed in
/// `exclusions` are never evaluated by the quadrature and sampling code.
#[derive(Clone)]
pub struct RealFn {
    name: String,
    eval: Scalar,
    derivs: Vec<Scalar>,
    exclusions: Vec<f64>,
}

impl fmt::Debug for RealFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RealFn")
            .field("name", &self.name)
            .field("derivs", &self.derivs.len())
            .field("exclusions", &self.exclusions)
            .finish()
    }
}

impl RealFn {
    pub fn new<F>(name: impl Into<String>, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            name: name.into(),
            eval: Arc::new(f),
            derivs: Vec::new(),
            exclusions: Vec::new(),
        }
    }

    /// Appends the next derivative to the stack.
    pub fn with_derivative<F>(mut self, d: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        self.derivs.push(Arc::new(d));
        self
    }

    pub fn with_exclusions(mut self, points: impl IntoIterator<Item = f64>) -> Self {
        self.exclusions.extend(points);
        self.exclusions.sort_by(f64::total_cmp);
        self.exclusions.dedup();
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn constant(k: f64) -> Self {
        Self::new(format!("const({k})"), move |_| k)
            .with_derivative(|_| 0.0)
            .with_derivative(|_| 0.0)
            .with_derivative(|_| 0.0)
            .with_derivative(|_| 0.0)
    }

    pub fn identity() -> Self {
        Self::new("id", |t| t)
            .with_derivative(|_| 1.0)
            .with_derivative(|_| 0.0)
            .with_derivative(|_| 0.0)
            .with_derivative(|_| 0.0)
    }

    pub fn exp() -> Self {
        Self::new("exp", f64::exp)
            .with_derivative(f64::exp)
            .with_derivative(f64::exp)
            .with_derivative(f64::exp)
            .with_derivative(f64::exp)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    /// Number of derivatives on the stack.
    pub fn deriv_order(&self) -> usize {
        self.derivs.len()
    }

    /// Evaluates `f^(k)(x)`; `k = 0` is the function itself.
    pub fn deriv(&self, k: usize, x: f64) -> Result<f64> {
        match k {
            0 => Ok(self.eval(x)),
            k if k <= self.derivs.len() => Ok((self.derivs[k - 1])(x)),
            _ => Err(self.insufficient(k)),
        }
    }

    /// `f^(k)` as a function in its own right, keeping the rest of the stack.
    pub fn derivative(&self, k: usize) -> Result<RealFn> {
        if k == 0 {
            return Ok(self.clone());
        }
        if k > self.derivs.len() {
            return Err(self.insufficient(k));
        }
        Ok(RealFn {
            name: format!("{}^({k})", self.name),
            eval: Arc::clone(&self.derivs[k - 1]),
            derivs: self.derivs[k..].to_vec(),
            exclusions: self.exclusions.clone(),
        })
    }

    pub(crate) fn insufficient(&self, need: usize) -> Error {
        Error::InsufficientDerivatives {
            name: self.name.clone(),
            have: self.derivs.len(),
            need,
        }
    }

    pub fn require_derivs(&self, need: usize) -> Result<()> {
        if self.derivs.len() < need {
            Err(self.insufficient(need))
        } else {
            Ok(())
        }
    }

    pub fn exclusions(&self) -> &[f64] {
        &self.exclusions
    }

    pub fn is_excluded(&self, x: f64) -> bool {
        self.exclusions
            .iter()
            .any(|&p| (x - p).abs() <= 1e-14 * p.abs().max(1.0))
    }

    /// `-f`, with the derivative stack negated as well.
    pub fn negated(&self) -> RealFn {
        let eval = Arc::clone(&self.eval);
        RealFn {
            name: format!("-{}", self.name),
            eval: Arc::new(move |x| -eval(x)),
            derivs: self
                .derivs
                .iter()
                .map(|d| {
                    let d = Arc::clone(d);
                    Arc::new(move |x| -d(x)) as Scalar
                })
                .collect(),
            exclusions: self.exclusions.clone(),
        }
    }

    /// `k·f`, with the derivative stack scaled as well.
    pub fn scaled(&self, k: f64) -> RealFn {
        let eval = Arc::clone(&self.eval);
        RealFn {
            name: format!("{k}*{}", self.name),
            eval: Arc::new(move |x| k * eval(x)),
            derivs: self
                .derivs
                .iter()
                .map(|d| {
                    let d = Arc::clone(d);
                    Arc::new(move |x| k * d(x)) as Scalar
                })
                .collect(),
            exclusions: self.exclusions.clone(),
        }
    }
}

/// Strictly increasing sample abscissae.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    points: Vec<f64>,
    excludes_base: bool,
}

impl Grid {
    /// Wraps explicit points, checking they are finite and strictly increasing.
    pub fn from_points(points: Vec<f64>, excludes_base: bool) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyGrid);
        }
        if let Some(&x) = points.iter().find(|x| !x.is_finite()) {
            return Err(Error::Domain { x });
        }
        if let Some(i) = points.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::UnorderedSamples { index: i + 1 });
        }
        Ok(Self {
            points,
            excludes_base,
        })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn excludes_base(&self) -> bool {
        self.excludes_base
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.iter().copied()
    }
}

/// `count` uniformly spaced points over `iv`, optionally dropping any point
/// within `δ_c` of the base point.
pub fn make_grid(iv: &Interval, count: usize, exclude_base: bool) -> Result<Grid> {
    if count < 2 {
        return Err(Error::InvalidArgument(format!(
            "grid needs at least 2 points, got {count}"
        )));
    }
    let step = iv.width() / (count - 1) as f64;
    let points: Vec<f64> = (0..count)
        .map(|i| {
            if i == count - 1 {
                iv.hi()
            } else {
                iv.lo() + i as f64 * step
            }
        })
        .filter(|&x| !(exclude_base && iv.is_near_base(x)))
        .collect();
    if points.is_empty() {
        return Err(Error::EmptyGrid);
    }
    Ok(Grid {
        points,
        excludes_base: exclude_base,
    })
}

/// Largest order supported by [`finite_diff`].
pub const MAX_FD_ORDER: usize = 4;

/// Central difference estimate of `f^(k)(x)` on the stencil
/// `x + (k/2 - j)·h`, `j = 0..=k`.
pub fn finite_diff(f: &RealFn, k: usize, x: f64, h: f64) -> Result<f64> {
    fd_impl(f, k, x, h, None)
}

/// [`finite_diff`] that also rejects stencils leaving `iv`.
pub fn finite_diff_in(f: &RealFn, iv: &Interval, k: usize, x: f64, h: f64) -> Result<f64> {
    fd_impl(f, k, x, h, Some(iv))
}

fn fd_impl(f: &RealFn, k: usize, x: f64, h: f64, iv: Option<&Interval>) -> Result<f64> {
    if k > MAX_FD_ORDER {
        return Err(Error::OrderTooLarge {
            n: k,
            max: MAX_FD_ORDER,
        });
    }
    if !(h > 0.0) || !h.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "step must be positive, got {h}"
        )));
    }
    if k == 0 {
        if f.is_excluded(x) || iv.is_some_and(|iv| !iv.contains(x)) {
            return Err(Error::Domain { x });
        }
        return Ok(f.eval(x));
    }
    // half-step snapped so that x + m·q is exactly representable
    let q = match (x + 0.5 * h) - x {
        q if q > 0.0 => q,
        _ => 0.5 * h,
    };
    let h = 2.0 * q;
    let mut acc = 0.0;
    let mut binom = 1.0;
    for j in 0..=k {
        let xj = x + (k as f64 - 2.0 * j as f64) * q;
        if f.is_excluded(xj) || iv.is_some_and(|iv| !iv.contains(xj)) {
            return Err(Error::Domain { x: xj });
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * binom * f.eval(xj);
        binom = binom * (k - j) as f64 / (j + 1) as f64;
    }
    Ok(acc / h.powi(k as i32))
}

/// Compares the derivative stack of `f` against finite differences at the
/// given points, for orders `1..=max_order`. Returns the worst ratio of the
/// discrepancy to the allowed tolerance `max(1e-4, 1e-3·|f^(k)(x)|)`; values
/// at most one mean the stack is consistent.
pub fn derivative_stack_consistency(f: &RealFn, points: &[f64], max_order: usize) -> Result<f64> {
    let orders = max_order.min(f.deriv_order()).min(MAX_FD_ORDER);
    let mut worst: f64 = 0.0;
    for k in 1..=orders {
        // balances truncation against cancellation for k = 1, 2
        let h = if k == 1 { 1e-5 } else { 1e-3 };
        for &x in points {
            let exact = f.deriv(k, x)?;
            let approx = finite_diff(f, k, x, h)?;
            let tol = (1e-3 * exact.abs()).max(1e-4);
            worst = worst.max((exact - approx).abs() / tol);
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn unit(c: f64) -> Interval {
        Interval::new(0.0, 1.0, c).unwrap()
    }

    #[test]
    fn interval_rejects_bad_input() {
        assert!(Interval::new(1.0, 1.0, 1.0).is_err());
        assert!(Interval::new(2.0, 1.0, 1.5).is_err());
        assert!(Interval::new(0.0, 1.0, 1.5).is_err());
        assert!(Interval::new(0.0, f64::INFINITY, 0.0).is_err());
        assert!(Interval::new(f64::NAN, 1.0, 0.0).is_err());
        assert!(Interval::new(-1.0, 1.0, -1.0).is_ok());
    }

    #[test]
    fn grid_uniform() {
        let g = make_grid(&unit(0.0), 3, false).unwrap();
        assert_eq!(g.points(), &[0.0, 0.5, 1.0]);
    }

    #[test]
    fn grid_drops_base() {
        let g = make_grid(&unit(0.0), 3, true).unwrap();
        assert_eq!(g.points(), &[0.5, 1.0]);
        let iv = Interval::new(-1.0, 1.0, 0.0).unwrap();
        let g = make_grid(&iv, 5, true).unwrap();
        assert_eq!(g.points(), &[-1.0, -0.5, 0.5, 1.0]);
        assert!(g.excludes_base());
    }

    #[test]
    fn grid_rejects_small_count() {
        assert!(make_grid(&unit(0.0), 1, false).is_err());
        assert!(make_grid(&unit(0.0), 0, false).is_err());
    }

    #[test]
    fn grid_from_points_checks_order() {
        assert!(Grid::from_points(vec![0.0, 1.0, 1.0], false).is_err());
        assert!(Grid::from_points(vec![], false).is_err());
        assert!(Grid::from_points(vec![0.0, 0.5], false).is_ok());
    }

    #[test]
    fn finite_diff_examples() {
        let sq = RealFn::new("sq", |t| t * t);
        assert_abs_diff_eq!(finite_diff(&sq, 1, 1.0, 1e-5).unwrap(), 2.0, epsilon = 1e-8);
        assert_abs_diff_eq!(
            finite_diff(&RealFn::exp(), 2, 0.0, 1e-4).unwrap(),
            1.0,
            epsilon = 1e-6
        );
        let id = RealFn::identity();
        for x in [-3.0, -0.75, 0.0, 0.25, 1.0, 2.0] {
            assert_abs_diff_eq!(finite_diff(&id, 2, x, 1e-4).unwrap(), 0.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn finite_diff_higher_orders() {
        let e = RealFn::exp();
        assert_abs_diff_eq!(finite_diff(&e, 3, 0.0, 1e-2).unwrap(), 1.0, epsilon = 1e-4);
        assert_abs_diff_eq!(finite_diff(&e, 4, 0.0, 1e-2).unwrap(), 1.0, epsilon = 1e-3);
        assert!(finite_diff(&e, 5, 0.0, 1e-2).is_err());
    }

    #[test]
    fn finite_diff_domain_errors() {
        let iv = unit(0.0);
        let e = RealFn::exp();
        assert!(finite_diff_in(&e, &iv, 2, 0.0, 1e-3).is_err());
        assert!(finite_diff_in(&e, &iv, 2, 0.5, 1e-3).is_ok());
        let kinked = RealFn::new("sgn", f64::signum).with_exclusions([0.0]);
        assert!(finite_diff(&kinked, 2, 0.0, 1e-3).is_err());
        assert!(finite_diff(&e, 1, 0.0, 0.0).is_err());
    }

    #[test]
    fn derivative_views() {
        let e = RealFn::exp().negated();
        assert_eq!(e.deriv_order(), 4);
        assert_abs_diff_eq!(e.deriv(2, 0.0).unwrap(), -1.0);
        let d = e.derivative(3).unwrap();
        assert_eq!(d.deriv_order(), 1);
        assert!(e.derivative(5).is_err());
        assert!(matches!(
            e.deriv(5, 0.0),
            Err(Error::InsufficientDerivatives {
                have: 4,
                need: 5,
                ..
            })
        ));
    }
}
