//! Adaptive quadrature.
//!
//! Two rules are provided: adaptive Simpson with a Richardson error estimate
//! (the default) and adaptive 10-point Gauss–Legendre. Points listed as
//! exclusions are never evaluated: the range is split there, and Simpson
//! panels touching an excluded endpoint fall back to an open composite
//! midpoint rule until the panel no longer touches it.

use std::cell::Cell;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::interval::RealFn;

/// Hard cap on integrand evaluations for a single call.
pub const MAX_EVALUATIONS: usize = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum QuadMethod {
    #[default]
    AdaptiveSimpson,
    AdaptiveGauss,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub method: QuadMethod,
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Bisection levels below each starting panel.
    pub max_depth: u32,
    /// Panels the range is split into before adaptation starts.
    pub min_intervals: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            method: QuadMethod::AdaptiveSimpson,
            abs_tol: 1e-10,
            rel_tol: 1e-9,
            max_depth: 40,
            min_intervals: 4,
        }
    }
}

impl QuadConfig {
    pub fn with_method(mut self, method: QuadMethod) -> Self {
        self.method = method;
        self
    }

    pub fn with_tolerances(mut self, abs_tol: f64, rel_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self.rel_tol = rel_tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if !(self.abs_tol > 0.0) || !(self.rel_tol > 0.0) {
            return bad(format!(
                "tolerances must be positive (abs {}, rel {})",
                self.abs_tol, self.rel_tol
            ));
        }
        if self.max_depth == 0 || self.max_depth > 60 {
            return bad(format!(
                "max_depth must lie in 1..=60, got {}",
                self.max_depth
            ));
        }
        if self.min_intervals == 0 {
            return bad("min_intervals must be positive".into());
        }
        Ok(())
    }
}

/// Integral estimate with its error estimate and cost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub evaluations: usize,
}

/// Signed integral of `f` from `a` to `b`.
pub fn integrate(f: &RealFn, a: f64, b: f64, cfg: &QuadConfig) -> Result<f64> {
    integrate_fn(|t| f.eval(t), f.exclusions(), a, b, cfg).map(|e| e.value)
}

/// Signed integral of an arbitrary closure, never evaluating it at `exclusions`.
pub fn integrate_fn<F>(
    f: F,
    exclusions: &[f64],
    a: f64,
    b: f64,
    cfg: &QuadConfig,
) -> Result<Estimate>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    if !a.is_finite() {
        return Err(Error::Domain { x: a });
    }
    if !b.is_finite() {
        return Err(Error::Domain { x: b });
    }
    if a == b {
        return Ok(Estimate {
            value: 0.0,
            error: 0.0,
            evaluations: 0,
        });
    }
    if a > b {
        let e = integrate_fn(f, exclusions, b, a, cfg)?;
        return Ok(Estimate {
            value: -e.value,
            ..e
        });
    }

    let ctx = Ctx {
        f: &f,
        evals: Cell::new(0),
        max_depth: cfg.max_depth,
        unconverged: Cell::new(false),
    };

    let excluded = |x: f64| {
        exclusions
            .iter()
            .any(|&p| (x - p).abs() <= 1e-14 * p.abs().max(1.0))
    };
    let mut breaks = vec![a];
    breaks.extend(exclusions.iter().copied().filter(|&p| p > a && p < b));
    breaks.push(b);
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();

    // Starting panels, each with flags for excluded endpoints.
    let total = b - a;
    let mut panels = Vec::new();
    for w in breaks.windows(2) {
        let (p, q) = (w[0], w[1]);
        let share = ((q - p) / total * cfg.min_intervals as f64).ceil().max(1.0) as usize;
        let h = (q - p) / share as f64;
        for k in 0..share {
            let lo = p + k as f64 * h;
            let hi = if k + 1 == share {
                q
            } else {
                p + (k + 1) as f64 * h
            };
            panels.push((lo, hi, k == 0 && excluded(p), k + 1 == share && excluded(q)));
        }
    }

    let mut nodes = Vec::with_capacity(panels.len());
    for &(lo, hi, open_l, open_r) in &panels {
        nodes.push(ctx.start(cfg.method, lo, hi, open_l, open_r)?);
    }
    let coarse: f64 = nodes.iter().map(Node::whole).sum();
    let eps_total = cfg.abs_tol.max(cfg.rel_tol * coarse.abs());

    let mut value = 0.0;
    let mut error = 0.0;
    for node in nodes {
        let (lo, hi) = node.bounds();
        let eps = eps_total * (hi - lo) / total;
        let (v, e) = ctx.refine(node, eps, 0)?;
        value += v;
        error += e;
    }

    if ctx.unconverged.get() && error > eps_total {
        return Err(Error::NonConvergence {
            a,
            b,
            estimate: value,
            error,
        });
    }
    Ok(Estimate {
        value,
        error,
        evaluations: ctx.evals.get(),
    })
}

#[derive(Debug, Clone, Copy)]
enum Node {
    Simpson {
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
    },
    /// Open rule for panels with an excluded endpoint.
    Midpoint {
        a: f64,
        b: f64,
        open_l: bool,
        open_r: bool,
        whole: f64,
    },
    Gauss {
        a: f64,
        b: f64,
        whole: f64,
    },
}

impl Node {
    fn whole(&self) -> f64 {
        match *self {
            Node::Simpson { whole, .. }
            | Node::Midpoint { whole, .. }
            | Node::Gauss { whole, .. } => whole,
        }
    }

    fn bounds(&self) -> (f64, f64) {
        match *self {
            Node::Simpson { a, b, .. } | Node::Midpoint { a, b, .. } | Node::Gauss { a, b, .. } => {
                (a, b)
            }
        }
    }
}

struct Ctx<'a, F> {
    f: &'a F,
    evals: Cell<usize>,
    max_depth: u32,
    unconverged: Cell<bool>,
}

impl<F: Fn(f64) -> f64> Ctx<'_, F> {
    fn eval(&self, x: f64) -> Result<f64> {
        let n = self.evals.get() + 1;
        self.evals.set(n);
        if n > MAX_EVALUATIONS {
            return Err(Error::NonConvergence {
                a: x,
                b: x,
                estimate: f64::NAN,
                error: f64::INFINITY,
            });
        }
        let y = (self.f)(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFinite { x })
        }
    }

    fn start(
        &self,
        method: QuadMethod,
        a: f64,
        b: f64,
        open_l: bool,
        open_r: bool,
    ) -> Result<Node> {
        match method {
            QuadMethod::AdaptiveGauss => Ok(Node::Gauss {
                a,
                b,
                whole: self.gauss(a, b)?,
            }),
            QuadMethod::AdaptiveSimpson if open_l || open_r => Ok(Node::Midpoint {
                a,
                b,
                open_l,
                open_r,
                whole: (b - a) * self.eval(0.5 * (a + b))?,
            }),
            QuadMethod::AdaptiveSimpson => {
                let fa = self.eval(a)?;
                let fm = self.eval(0.5 * (a + b))?;
                let fb = self.eval(b)?;
                Ok(Node::Simpson {
                    a,
                    b,
                    fa,
                    fm,
                    fb,
                    whole: (b - a) / 6.0 * (fa + 4.0 * fm + fb),
                })
            }
        }
    }

    fn gauss(&self, a: f64, b: f64) -> Result<f64> {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        let mut acc = 0.0;
        for &(x, w) in gauss_legendre_10() {
            acc += w * self.eval(mid + half * x)?;
        }
        Ok(half * acc)
    }

    /// Returns (value, error estimate) for the node.
    fn refine(&self, node: Node, eps: f64, depth: u32) -> Result<(f64, f64)> {
        let (a, b) = node.bounds();
        let m = 0.5 * (a + b);
        let splittable = m > a && m < b;
        match node {
            Node::Simpson {
                fa, fm, fb, whole, ..
            } => {
                let flm = self.eval(0.5 * (a + m))?;
                let frm = self.eval(0.5 * (m + b))?;
                let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
                let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
                let sum = left + right;
                let delta = sum - whole;
                let floor = 16.0 * f64::EPSILON * (left.abs() + right.abs());
                if delta.abs() <= 15.0 * eps.max(floor) {
                    return Ok((sum + delta / 15.0, delta.abs() / 15.0));
                }
                if depth >= self.max_depth || !splittable {
                    self.unconverged.set(true);
                    return Ok((sum + delta / 15.0, delta.abs() / 15.0));
                }
                let l = Node::Simpson {
                    a,
                    b: m,
                    fa,
                    fm: flm,
                    fb: fm,
                    whole: left,
                };
                let r = Node::Simpson {
                    a: m,
                    b,
                    fa: fm,
                    fm: frm,
                    fb,
                    whole: right,
                };
                let (vl, el) = self.refine(l, 0.5 * eps, depth + 1)?;
                let (vr, er) = self.refine(r, 0.5 * eps, depth + 1)?;
                Ok((vl + vr, el + er))
            }
            Node::Midpoint {
                open_l,
                open_r,
                whole,
                ..
            } => {
                let left = (m - a) * self.eval(0.5 * (a + m))?;
                let right = (b - m) * self.eval(0.5 * (m + b))?;
                let sum = left + right;
                let delta = sum - whole;
                let floor = 16.0 * f64::EPSILON * (left.abs() + right.abs());
                if delta.abs() <= 3.0 * eps.max(floor) {
                    return Ok((sum + delta / 3.0, delta.abs() / 3.0));
                }
                if depth >= self.max_depth || !splittable {
                    self.unconverged.set(true);
                    return Ok((sum + delta / 3.0, delta.abs() / 3.0));
                }
                let l = self.child(a, m, open_l, false, left)?;
                let r = self.child(m, b, false, open_r, right)?;
                let (vl, el) = self.refine(l, 0.5 * eps, depth + 1)?;
                let (vr, er) = self.refine(r, 0.5 * eps, depth + 1)?;
                Ok((vl + vr, el + er))
            }
            Node::Gauss { whole, .. } => {
                let left = self.gauss(a, m)?;
                let right = self.gauss(m, b)?;
                let sum = left + right;
                let delta = sum - whole;
                let floor = 16.0 * f64::EPSILON * (left.abs() + right.abs());
                if delta.abs() <= eps.max(floor) {
                    return Ok((sum, delta.abs()));
                }
                if depth >= self.max_depth || !splittable {
                    self.unconverged.set(true);
                    return Ok((sum, delta.abs()));
                }
                let (vl, el) = self.refine(
                    Node::Gauss {
                        a,
                        b: m,
                        whole: left,
                    },
                    0.5 * eps,
                    depth + 1,
                )?;
                let (vr, er) = self.refine(
                    Node::Gauss {
                        a: m,
                        b,
                        whole: right,
                    },
                    0.5 * eps,
                    depth + 1,
                )?;
                Ok((vl + vr, el + er))
            }
        }
    }

    fn child(
        &self,
        a: f64,
        b: f64,
        open_l: bool,
        open_r: bool,
        midpoint_whole: f64,
    ) -> Result<Node> {
        if open_l || open_r {
            Ok(Node::Midpoint {
                a,
                b,
                open_l,
                open_r,
                whole: midpoint_whole,
            })
        } else {
            self.start(QuadMethod::AdaptiveSimpson, a, b, false, false)
        }
    }
}

/// Nodes and weights of the 10-point Gauss–Legendre rule on `[-1, 1]`.
pub fn gauss_legendre_10() -> &'static [(f64, f64); 10] {
    static RULE: OnceLock<[(f64, f64); 10]> = OnceLock::new();
    RULE.get_or_init(gauss_legendre::<10>)
}

// Newton iteration on P_N from the Tricomi initial guesses.
fn gauss_legendre<const N: usize>() -> [(f64, f64); N] {
    let mut rule = [(0.0, 0.0); N];
    let n = N as f64;
    for (i, slot) in rule.iter_mut().enumerate() {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(N, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(N, x);
        if d != 0.0 {
            dp = d;
        }
        *slot = (x, 2.0 / ((1.0 - x * x) * dp * dp));
    }
    rule.sort_by(|l, r| l.0.total_cmp(&r.0));
    rule
}

/// (P_n(x), P_n'(x)) by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}
