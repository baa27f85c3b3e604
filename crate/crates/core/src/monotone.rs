//! Sampling-based monotonicity certification and the verifiers for the
//! fraction rules: ratios of high-order antiderivatives (integral rule),
//! ratios of Taylor remainders (derivative rule), their zero sets, and the
//! monotonicity and convexity of the high-order mean.

use std::fmt;

use rayon::prelude::*;

use crate::calculus::{
    antideriv_cauchy, mean, taylor_remainder, taylor_remainder_deriv, AntiderivSpec,
};
use crate::error::{Error, Result};
use crate::interval::{make_grid, Grid, Interval, RealFn};
use crate::quad::QuadConfig;

/// Grid size used by [`verify_mean_monotone`].
pub const MEAN_GRID_POINTS: usize = 41;

/// Relative resolution thresholds for sampled verdicts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds {
    /// `τ_strict = strict_rel · (1 + max |value|)`.
    pub strict_rel: f64,
    /// `τ_zero = zero_rel · (1 + max |value|)`.
    pub zero_rel: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            strict_rel: 1e-9,
            zero_rel: 1e-8,
        }
    }
}

fn scale(values: impl Iterator<Item = f64>) -> f64 {
    1.0 + values.fold(0.0, |m: f64, v| m.max(v.abs()))
}

impl Thresholds {
    pub fn tau_strict(&self, values: impl Iterator<Item = f64>) -> f64 {
        self.strict_rel * scale(values)
    }

    pub fn tau_zero(&self, values: impl Iterator<Item = f64>) -> f64 {
        self.zero_rel * scale(values)
    }
}

/// Quadrature settings plus verdict thresholds.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CheckConfig {
    pub quad: QuadConfig,
    pub thresholds: Thresholds,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    StrictlyIncreasing,
    Nondecreasing,
    StrictlyDecreasing,
    Nonincreasing,
    /// Neither direction holds.
    NotMonotone,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Increasing,
    Decreasing,
}

impl Verdict {
    pub fn direction(self) -> Option<Direction> {
        match self {
            Verdict::StrictlyIncreasing | Verdict::Nondecreasing => Some(Direction::Increasing),
            Verdict::StrictlyDecreasing | Verdict::Nonincreasing => Some(Direction::Decreasing),
            Verdict::NotMonotone => None,
        }
    }

    pub fn is_strict(self) -> bool {
        matches!(
            self,
            Verdict::StrictlyIncreasing | Verdict::StrictlyDecreasing
        )
    }

    /// The verdict with the direction reversed.
    pub fn flipped(self) -> Verdict {
        match self {
            Verdict::StrictlyIncreasing => Verdict::StrictlyDecreasing,
            Verdict::Nondecreasing => Verdict::Nonincreasing,
            Verdict::StrictlyDecreasing => Verdict::StrictlyIncreasing,
            Verdict::Nonincreasing => Verdict::Nondecreasing,
            Verdict::NotMonotone => Verdict::NotMonotone,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::StrictlyIncreasing => "strictly_increasing",
            Verdict::Nondecreasing => "nondecreasing",
            Verdict::StrictlyDecreasing => "strictly_decreasing",
            Verdict::Nonincreasing => "nonincreasing",
            Verdict::NotMonotone => "none",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A consecutive sample pair that prevents a stronger verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub x1: f64,
    pub x2: f64,
    pub v1: f64,
    pub v2: f64,
}

impl Violation {
    pub fn delta(&self) -> f64 {
        self.v2 - self.v1
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonotonicityReport {
    pub verdict: Verdict,
    /// Ties for weak verdicts, every non-tie pair for [`Verdict::NotMonotone`],
    /// empty for strict verdicts.
    pub violations: Vec<Violation>,
    pub samples: Vec<(f64, f64)>,
    pub tau: f64,
}

impl MonotonicityReport {
    fn deltas(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.windows(2).map(|w| w[1].1 - w[0].1)
    }

    /// Whether the samples satisfy `property` at resolution `tau`. A constant
    /// sequence satisfies both weak properties.
    pub fn holds(&self, property: Verdict) -> bool {
        let tau = self.tau;
        match property {
            Verdict::StrictlyIncreasing => self.deltas().all(|d| d > tau),
            Verdict::StrictlyDecreasing => self.deltas().all(|d| d < -tau),
            Verdict::Nondecreasing => self.deltas().all(|d| d >= -tau),
            Verdict::Nonincreasing => self.deltas().all(|d| d <= tau),
            Verdict::NotMonotone => true,
        }
    }

    /// Largest step against the direction of `property`, zero if there is none.
    pub fn max_violation(&self, property: Verdict) -> f64 {
        match property.direction() {
            Some(Direction::Increasing) => self.deltas().fold(0.0, |m, d| m.max(-d)),
            Some(Direction::Decreasing) => self.deltas().fold(0.0, |m, d| m.max(d)),
            None => 0.0,
        }
    }

    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.1)
    }
}

/// Classifies a sampled sequence with the default thresholds.
pub fn monotonicity_of(samples: Vec<(f64, f64)>) -> Result<MonotonicityReport> {
    monotonicity_with(samples, &Thresholds::default())
}

pub fn monotonicity_with(samples: Vec<(f64, f64)>, th: &Thresholds) -> Result<MonotonicityReport> {
    if samples.len() < 3 {
        return Err(Error::TooFewSamples {
            got: samples.len(),
            need: 3,
        });
    }
    if let Some(i) = samples.windows(2).position(|w| !(w[0].0 < w[1].0)) {
        return Err(Error::UnorderedSamples { index: i + 1 });
    }
    let tau = th.tau_strict(samples.iter().map(|s| s.1));
    let pairs = || {
        samples.windows(2).map(|w| Violation {
            x1: w[0].0,
            x2: w[1].0,
            v1: w[0].1,
            v2: w[1].1,
        })
    };
    let rises = pairs().filter(|p| p.delta() > tau).count();
    let falls = pairs().filter(|p| p.delta() < -tau).count();
    let steps = samples.len() - 1;

    let (verdict, violations) = if rises == steps {
        (Verdict::StrictlyIncreasing, Vec::new())
    } else if falls == steps {
        (Verdict::StrictlyDecreasing, Vec::new())
    } else if falls == 0 {
        // includes the all-ties case, reported as nondecreasing
        let ties = pairs().filter(|p| p.delta() <= tau).collect();
        (Verdict::Nondecreasing, ties)
    } else if rises == 0 {
        let ties = pairs().filter(|p| p.delta() >= -tau).collect();
        (Verdict::Nonincreasing, ties)
    } else {
        let moves = pairs().filter(|p| p.delta().abs() > tau).collect();
        (Verdict::NotMonotone, moves)
    };
    Ok(MonotonicityReport {
        verdict,
        violations,
        samples,
        tau,
    })
}

/// True when `conclusion` is at least as strong as `hypothesis`, in the same
/// direction. A non-monotone hypothesis constrains nothing.
pub fn inherits(hypothesis: &MonotonicityReport, conclusion: &MonotonicityReport) -> bool {
    conclusion.holds(hypothesis.verdict)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Positive,
    Negative,
    Mixed,
}

/// Strict sign of `g` over the grid, skipping declared exclusion points.
pub fn sign_check(g: &RealFn, iv: &Interval, grid: &Grid) -> Sign {
    let mut pos = false;
    let mut neg = false;
    for x in grid.iter().filter(|&x| iv.contains(x) && !g.is_excluded(x)) {
        let v = g.eval(x);
        if v > 0.0 {
            pos = true;
        } else if v < 0.0 {
            neg = true;
        } else {
            return Sign::Mixed;
        }
    }
    match (pos, neg) {
        (true, false) => Sign::Positive,
        (false, true) => Sign::Negative,
        _ => Sign::Mixed,
    }
}

/// Evaluates `h` over the grid in parallel, keeping grid order.
pub fn sample<H>(grid: &Grid, h: H) -> Result<Vec<(f64, f64)>>
where
    H: Fn(f64) -> Result<f64> + Sync,
{
    grid.points()
        .par_iter()
        .map(|&x| h(x).map(|v| (x, v)))
        .collect()
}

/// Report for the plain samples of `f` on the grid.
pub fn function_report(f: &RealFn, grid: &Grid, th: &Thresholds) -> Result<MonotonicityReport> {
    let pts: Vec<f64> = grid.iter().filter(|&x| !f.is_excluded(x)).collect();
    monotonicity_with(pts.into_iter().map(|x| (x, f.eval(x))).collect(), th)
}

/// Hypothesis bundle shared by the integral and derivative rules.
#[derive(Debug, Clone)]
pub struct TheoremCase {
    pub f: RealFn,
    pub g: RealFn,
    pub n: usize,
    pub iv: Interval,
    /// Expected verdict for the hypothesis ratio, when known.
    pub expected: Option<Verdict>,
    /// Run even when the sign hypothesis on `g` fails.
    pub force: bool,
}

impl TheoremCase {
    pub fn new(f: RealFn, g: RealFn, n: usize, iv: Interval) -> Self {
        Self {
            f,
            g,
            n,
            iv,
            expected: None,
            force: false,
        }
    }

    pub fn expecting(mut self, v: Verdict) -> Self {
        self.expected = Some(v);
        self
    }

    pub fn forced(mut self) -> Self {
        self.force = true;
        self
    }

    /// Short identifier for reports.
    pub fn id(&self) -> String {
        format!(
            "f={},g={},n={},I=[{},{}],c={}",
            self.f.name(),
            self.g.name(),
            self.n,
            self.iv.lo(),
            self.iv.hi(),
            self.iv.c()
        )
    }

    fn check_order(&self) -> Result<()> {
        if self.n == 0 {
            Err(Error::InvalidArgument("theorem order must be >= 1".into()))
        } else {
            Ok(())
        }
    }
}

fn ratio_samples(f: &RealFn, g: &RealFn, grid: &Grid) -> Vec<(f64, f64)> {
    grid.iter()
        .filter(|&x| !f.is_excluded(x) && !g.is_excluded(x))
        .map(|x| (x, f.eval(x) / g.eval(x)))
        .collect()
}

/// Integral rule: reports for `f/g` on the grid and for
/// `A(n,f,c)/A(n,g,c)` on the grid without the base point.
pub fn verify_gromov(
    case: &TheoremCase,
    cfg: &CheckConfig,
    grid_size: usize,
) -> Result<(MonotonicityReport, MonotonicityReport)> {
    case.check_order()?;
    let full = make_grid(&case.iv, grid_size, false)?;
    let punctured = make_grid(&case.iv, grid_size, true)?;
    if sign_check(&case.g, &case.iv, &full) == Sign::Mixed && !case.force {
        return Err(Error::Hypothesis(format!(
            "`{}` changes sign on {}",
            case.g.name(),
            case.iv
        )));
    }
    let th = &cfg.thresholds;
    let hypothesis = monotonicity_with(ratio_samples(&case.f, &case.g, &full), th)?;

    let fs = AntiderivSpec::new(case.n, case.f.clone(), case.iv)?;
    let gs = AntiderivSpec::new(case.n, case.g.clone(), case.iv)?;
    let samples = sample(&punctured, |x| {
        Ok(antideriv_cauchy(&fs, x, &cfg.quad)? / antideriv_cauchy(&gs, x, &cfg.quad)?)
    })?;
    Ok((hypothesis, monotonicity_with(samples, th)?))
}

/// Derivative rule: reports for `f^(n)/g^(n)` on the grid and for
/// `R(n-1,f,c)/R(n-1,g,c)` on the grid without the base point.
pub fn verify_lhopital(
    case: &TheoremCase,
    cfg: &CheckConfig,
    grid_size: usize,
) -> Result<(MonotonicityReport, MonotonicityReport)> {
    case.check_order()?;
    let n = case.n;
    case.f.require_derivs(n)?;
    case.g.require_derivs(n)?;
    let full = make_grid(&case.iv, grid_size, false)?;
    let punctured = make_grid(&case.iv, grid_size, true)?;
    let fd = case.f.derivative(n)?;
    let gd = case.g.derivative(n)?;
    if sign_check(&gd, &case.iv, &full) == Sign::Mixed && !case.force {
        return Err(Error::VanishingDerivative {
            name: case.g.name().to_string(),
            order: n,
        });
    }
    let th = &cfg.thresholds;
    let hypothesis = monotonicity_with(ratio_samples(&fd, &gd, &full), th)?;

    let c = case.iv.c();
    let samples = sample(&punctured, |x| {
        Ok(taylor_remainder(n - 1, &case.f, c, x)? / taylor_remainder(n - 1, &case.g, c, x)?)
    })?;
    Ok((hypothesis, monotonicity_with(samples, th)?))
}

/// `A(n,f,c)` vanishes at `c` and nowhere else on the grid.
pub fn zero_set_check_a(spec: &AntiderivSpec, grid: &Grid, cfg: &CheckConfig) -> Result<bool> {
    if sign_check(&spec.f, &spec.iv, grid) == Sign::Mixed {
        return Err(Error::Hypothesis(format!(
            "`{}` changes sign on {}",
            spec.f.name(),
            spec.iv
        )));
    }
    let off_base = Grid::from_points(
        grid.iter().filter(|&x| !spec.iv.is_near_base(x)).collect(),
        true,
    )?;
    let values = sample(&off_base, |x| antideriv_cauchy(spec, x, &cfg.quad))?;
    let tau = cfg.thresholds.tau_zero(values.iter().map(|v| v.1));
    let at_base = antideriv_cauchy(spec, spec.c(), &cfg.quad)?;
    Ok(at_base == 0.0 && values.iter().all(|v| v.1.abs() > tau))
}

/// `R(n-1,f,c)^(k)` vanishes only at `c`, for every `k` in `0..n`.
///
/// `c` need not be the base point of `iv`; `iv` only supplies the gap around `c`.
pub fn zero_set_check_r(
    n: usize,
    f: &RealFn,
    c: f64,
    iv: &Interval,
    grid: &Grid,
    th: &Thresholds,
) -> Result<bool> {
    if n == 0 {
        return Err(Error::InvalidArgument("zero-set check needs n >= 1".into()));
    }
    f.require_derivs(n)?;
    if sign_check(&f.derivative(n)?, iv, grid) == Sign::Mixed {
        return Err(Error::VanishingDerivative {
            name: f.name().to_string(),
            order: n,
        });
    }
    let gap = iv.base_gap();
    let pts: Vec<f64> = grid.iter().filter(|&x| (x - c).abs() >= gap).collect();
    for k in 0..n {
        let values = pts
            .iter()
            .map(|&x| taylor_remainder_deriv(n - 1, k, f, c, x))
            .collect::<Result<Vec<f64>>>()?;
        let tau = th.tau_zero(values.iter().copied());
        if values.iter().any(|v| v.abs() <= tau)
            || taylor_remainder_deriv(n - 1, k, f, c, c)? != 0.0
        {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Report for `x ↦ M(n,f,c)(x)` on a [`MEAN_GRID_POINTS`] grid without the base point.
pub fn verify_mean_monotone(
    n: usize,
    f: &RealFn,
    iv: &Interval,
    cfg: &CheckConfig,
) -> Result<MonotonicityReport> {
    let grid = make_grid(iv, MEAN_GRID_POINTS, true)?;
    let samples = sample(&grid, |x| mean(n, f, iv, x, &cfg.quad))?;
    monotonicity_with(samples, &cfg.thresholds)
}

/// Outcome of the discrete convexity test of the mean.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexityReport {
    /// Mean values, extended by `f(c)` at the base point.
    pub samples: Vec<(f64, f64)>,
    /// Largest drop between consecutive secant slopes (zero when convex).
    pub max_slope_drop: f64,
    pub slope_tau: f64,
    /// Chord ratio `(M(x) - f(c))/(x - c)` off the base point.
    pub chord: MonotonicityReport,
}

impl ConvexityReport {
    pub fn is_convex(&self) -> bool {
        self.max_slope_drop <= self.slope_tau && self.chord.holds(Verdict::Nondecreasing)
    }
}

/// Largest drop between consecutive secant slopes of `samples`, with the
/// strict threshold computed over the slopes. Convex data give a drop of zero.
pub fn slope_drop(samples: &[(f64, f64)], th: &Thresholds) -> (f64, f64) {
    let slopes: Vec<f64> = samples
        .windows(2)
        .map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0))
        .collect();
    let tau = th.tau_strict(slopes.iter().copied());
    (
        slopes.windows(2).fold(0.0, |m: f64, s| m.max(s[0] - s[1])),
        tau,
    )
}

/// Whether `f` sampled on the grid is discretely convex.
pub fn is_convex_on(f: &RealFn, grid: &Grid, th: &Thresholds) -> bool {
    let samples: Vec<(f64, f64)> = grid
        .iter()
        .filter(|&x| !f.is_excluded(x))
        .map(|x| (x, f.eval(x)))
        .collect();
    let (drop, tau) = slope_drop(&samples, th);
    drop <= tau
}

/// Discrete convexity of `M(n,f,c)` over a grid that includes `c`, plus the
/// nondecreasing chord ratio from `c`.
pub fn mean_convexity(
    n: usize,
    f: &RealFn,
    iv: &Interval,
    cfg: &CheckConfig,
    grid_size: usize,
) -> Result<ConvexityReport> {
    let c = iv.c();
    let mut pts: Vec<f64> = make_grid(iv, grid_size, true)?.points().to_vec();
    pts.push(c);
    pts.sort_by(f64::total_cmp);
    let grid = Grid::from_points(pts, false)?;
    let fc = f.eval(c);
    let samples = sample(&grid, |x| {
        if iv.is_near_base(x) {
            Ok(fc)
        } else {
            mean(n, f, iv, x, &cfg.quad)
        }
    })?;

    let (max_slope_drop, slope_tau) = slope_drop(&samples, &cfg.thresholds);

    let chord_samples = samples
        .iter()
        .filter(|s| !iv.is_near_base(s.0))
        .map(|&(x, m)| (x, (m - fc) / (x - c)))
        .collect();
    let chord = monotonicity_with(chord_samples, &cfg.thresholds)?;
    Ok(ConvexityReport {
        samples,
        max_slope_drop,
        slope_tau,
        chord,
    })
}

/// Whether `M(n,f,c)` passes the discrete convexity and chord tests.
pub fn verify_mean_convex(
    n: usize,
    f: &RealFn,
    iv: &Interval,
    cfg: &CheckConfig,
    grid_size: usize,
) -> Result<bool> {
    Ok(mean_convexity(n, f, iv, cfg, grid_size)?.is_convex())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::battery;

    fn pts(v: &[f64]) -> Vec<(f64, f64)> {
        v.iter().enumerate().map(|(i, &y)| (i as f64, y)).collect()
    }

    #[test]
    fn classify_examples() {
        let r = monotonicity_of(vec![(1.0, 1.0), (2.0, 2.0), (3.0, 3.0)]).unwrap();
        assert_eq!(r.verdict, Verdict::StrictlyIncreasing);
        assert!(r.violations.is_empty());

        let r = monotonicity_of(pts(&[5.0, 5.0, 5.0])).unwrap();
        assert_eq!(r.verdict, Verdict::Nondecreasing);
        assert!(r.holds(Verdict::Nonincreasing));
        assert!(!r.holds(Verdict::StrictlyIncreasing));

        let r = monotonicity_of(vec![(0.0, 0.0), (1.0, 1.0), (2.0, 0.0)]).unwrap();
        assert_eq!(r.verdict, Verdict::NotMonotone);
        assert!(r.violations.iter().any(|v| v.delta() > 0.0));
        assert!(r.violations.iter().any(|v| v.delta() < 0.0));
    }

    #[test]
    fn classify_weak_and_decreasing() {
        let r = monotonicity_of(pts(&[3.0, 2.0, 2.0, 1.0])).unwrap();
        assert_eq!(r.verdict, Verdict::Nonincreasing);
        assert_eq!(r.violations.len(), 1);
        let r = monotonicity_of(pts(&[3.0, 2.0, 1.0])).unwrap();
        assert_eq!(r.verdict, Verdict::StrictlyDecreasing);
        // ties within tau
        let r = monotonicity_of(pts(&[1.0, 1.0 + 1e-12, 2.0])).unwrap();
        assert_eq!(r.verdict, Verdict::Nondecreasing);
    }

    #[test]
    fn classify_errors() {
        assert!(matches!(
            monotonicity_of(pts(&[1.0, 2.0])),
            Err(Error::TooFewSamples { got: 2, need: 3 })
        ));
        assert!(matches!(
            monotonicity_of(vec![(0.0, 0.0), (0.0, 1.0), (1.0, 2.0)]),
            Err(Error::UnorderedSamples { index: 1 })
        ));
    }

    #[test]
    fn sign_examples() {
        let iv = Interval::new(0.0, 1.0, 0.0).unwrap();
        let grid = make_grid(&iv, 11, false).unwrap();
        assert_eq!(sign_check(&battery::one(), &iv, &grid), Sign::Positive);
        assert_eq!(sign_check(&battery::neg_exp(), &iv, &grid), Sign::Negative);
        let sym = Interval::new(-1.0, 1.0, 0.0).unwrap();
        let grid = make_grid(&sym, 10, false).unwrap();
        assert_eq!(sign_check(&battery::id(), &sym, &grid), Sign::Mixed);
        // excluded zero is skipped
        let g = RealFn::new("sgn+", |t: f64| t.abs()).with_exclusions([0.0]);
        let grid = make_grid(&sym, 11, false).unwrap();
        assert_eq!(sign_check(&g, &sym, &grid), Sign::Positive);
    }

    #[test]
    fn gromov_examples() {
        let cfg = CheckConfig::default();
        let iv = Interval::new(0.0, 2.0, 0.0).unwrap();
        let case = TheoremCase::new(battery::id(), battery::one(), 1, iv);
        let (h, c) = verify_gromov(&case, &cfg, 21).unwrap();
        assert_eq!(h.verdict, Verdict::StrictlyIncreasing);
        assert_eq!(c.verdict, Verdict::StrictlyIncreasing);
        for &(x, v) in &c.samples {
            assert!((v - x / 2.0).abs() < 1e-12);
        }

        let case = TheoremCase::new(battery::sq(), battery::one(), 2, iv);
        let (_, c) = verify_gromov(&case, &cfg, 21).unwrap();
        assert_eq!(c.verdict, Verdict::StrictlyIncreasing);
        for &(x, v) in &c.samples {
            assert!((v - x * x / 6.0).abs() < 1e-10);
        }

        let iv1 = Interval::new(0.0, 1.0, 0.0).unwrap();
        let case = TheoremCase::new(battery::exp(), battery::one(), 3, iv1);
        let (h, c) = verify_gromov(&case, &cfg, 21).unwrap();
        assert_eq!(h.verdict, Verdict::StrictlyIncreasing);
        assert_eq!(c.verdict, Verdict::StrictlyIncreasing);
    }

    #[test]
    fn gromov_rejects_mixed_sign_unless_forced() {
        let cfg = CheckConfig::default();
        let iv = Interval::new(-1.0, 1.0, -1.0).unwrap();
        let case = TheoremCase::new(battery::one(), battery::id(), 1, iv);
        assert!(matches!(
            verify_gromov(&case, &cfg, 10),
            Err(Error::Hypothesis(_))
        ));
        assert!(verify_gromov(&case.forced(), &cfg, 10).is_ok());
    }

    #[test]
    fn lhopital_examples() {
        let cfg = CheckConfig::default();
        let iv = Interval::new(0.0, 2.0, 0.0).unwrap();
        let case = TheoremCase::new(battery::sq(), battery::id(), 1, iv);
        let (h, c) = verify_lhopital(&case, &cfg, 21).unwrap();
        assert_eq!(h.verdict, Verdict::StrictlyIncreasing);
        assert_eq!(c.verdict, Verdict::StrictlyIncreasing);
        for &(x, v) in &c.samples {
            assert!((v - x).abs() < 1e-12);
        }

        let half_sq = battery::sq().scaled(0.5);
        let case = TheoremCase::new(battery::exp(), half_sq, 2, iv);
        let (h, c) = verify_lhopital(&case, &cfg, 31).unwrap();
        assert_eq!(h.verdict, Verdict::StrictlyIncreasing);
        assert_eq!(c.verdict, Verdict::StrictlyIncreasing);
        for &(x, v) in &c.samples {
            let exact = (x.exp() - 1.0 - x) / (0.5 * x * x);
            assert!((v - exact).abs() < 1e-9 * exact);
        }

        let case = TheoremCase::new(battery::exp(), battery::exp(), 2, iv);
        let (h, c) = verify_lhopital(&case, &cfg, 21).unwrap();
        assert_eq!(h.verdict, Verdict::Nondecreasing);
        assert_eq!(c.verdict, Verdict::Nondecreasing);
    }

    #[test]
    fn lhopital_errors() {
        let cfg = CheckConfig::default();
        let iv = Interval::new(0.0, 2.0, 0.0).unwrap();
        let case = TheoremCase::new(battery::abs_shifted(0.0), battery::id(), 1, iv);
        assert!(matches!(
            verify_lhopital(&case, &cfg, 21),
            Err(Error::InsufficientDerivatives { .. })
        ));
        let case = TheoremCase::new(battery::exp(), battery::sq(), 1, iv);
        assert!(matches!(
            verify_lhopital(&case, &cfg, 21),
            Err(Error::VanishingDerivative { .. })
        ));
    }

    #[test]
    fn zero_set_a_examples() {
        let cfg = CheckConfig::default();
        let iv = Interval::new(0.0, 1.0, 0.0).unwrap();
        let grid = make_grid(&iv, 21, false).unwrap();
        let spec = AntiderivSpec::new(2, battery::one(), iv).unwrap();
        assert!(zero_set_check_a(&spec, &grid, &cfg).unwrap());

        let iv = Interval::new(0.0, 1.0, 0.5).unwrap();
        let spec = AntiderivSpec::new(1, battery::exp(), iv).unwrap();
        assert!(zero_set_check_a(&spec, &grid, &cfg).unwrap());

        let sym = Interval::new(-1.0, 1.0, 0.0).unwrap();
        let grid = make_grid(&sym, 21, false).unwrap();
        let spec = AntiderivSpec::new(1, battery::id(), sym).unwrap();
        assert!(matches!(
            zero_set_check_a(&spec, &grid, &cfg),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn zero_set_r_examples() {
        let th = Thresholds::default();
        let sym = Interval::new(-1.0, 1.0, 0.0).unwrap();
        let grid = make_grid(&sym, 21, false).unwrap();
        assert!(zero_set_check_r(2, &battery::exp(), 0.0, &sym, &grid, &th).unwrap());

        let iv = Interval::new(0.5, 2.0, 0.5).unwrap();
        let grid = make_grid(&iv, 16, false).unwrap();
        assert!(zero_set_check_r(1, &battery::sq(), 0.0, &iv, &grid, &th).unwrap());

        let grid = make_grid(&sym, 21, false).unwrap();
        assert!(matches!(
            zero_set_check_r(1, &battery::sq(), 0.0, &sym, &grid, &th),
            Err(Error::VanishingDerivative { .. })
        ));
        // id - id(c) has a single zero, but a second-order remainder of id is identically zero
        assert!(zero_set_check_r(2, &battery::id(), 0.0, &sym, &grid, &th).is_err());
    }

    #[test]
    fn mean_monotone_examples() {
        let cfg = CheckConfig::default();
        let iv = Interval::new(0.0, 2.0, 0.0).unwrap();
        for n in 1..=3 {
            let r = verify_mean_monotone(n, &battery::id(), &iv, &cfg).unwrap();
            assert_eq!(r.verdict, Verdict::StrictlyIncreasing);
            for &(x, v) in &r.samples {
                assert!((v - x / (n as f64 + 1.0)).abs() < 1e-12);
            }
            let r = verify_mean_monotone(n, &RealFn::constant(2.0), &iv, &cfg).unwrap();
            assert_eq!(r.verdict, Verdict::Nondecreasing);
        }
        let iv1 = Interval::new(0.0, 1.0, 0.0).unwrap();
        let r = verify_mean_monotone(2, &battery::neg_exp(), &iv1, &cfg).unwrap();
        assert_eq!(r.verdict, Verdict::StrictlyDecreasing);
    }

    #[test]
    fn mean_convex_examples() {
        let cfg = CheckConfig::default();
        let iv = Interval::new(0.0, 2.0, 0.0).unwrap();
        let r = mean_convexity(1, &battery::sq(), &iv, &cfg, 21).unwrap();
        assert!(r.is_convex());
        for &(x, v) in &r.samples {
            assert!((v - x * x / 3.0).abs() < 1e-12);
        }
        let affine = RealFn::new("affine", |t| 3.0 - 2.0 * t);
        assert!(verify_mean_convex(2, &affine, &iv, &cfg, 21).unwrap());
        let sym = Interval::new(-1.0, 1.0, 0.0).unwrap();
        assert!(verify_mean_convex(2, &battery::abs_shifted(0.0), &sym, &cfg, 21).unwrap());
        // concave input is rejected
        let concave = RealFn::new("concave", |t| -t * t);
        assert!(!verify_mean_convex(1, &concave, &iv, &cfg, 21).unwrap());
    }
}
