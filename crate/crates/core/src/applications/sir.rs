//! Single-outbreak SIR model in population fractions:
//!
//! ```text
//! S' = -R0 S I,   I' = -I + R0 S I,   R' = I
//! ```
//!
//! with the conserved quantity `I + S - ln(S)/R0` and the Lambert-W final size.

use crate::calculus::mean;
use crate::error::{Error, Result};
use crate::interval::{Interval, RealFn};
use crate::monotone::CheckConfig;

use super::interp::Pchip;
use super::lambert::lambert_w0;

/// Number of trajectory times checked by [`sir_mean_apriori_check`].
pub const MEAN_CHECK_POINTS: usize = 64;

/// Fraction of the peak prevalence that ends the resolvable part of the orbit.
pub const CHORD_RESOLUTION: f64 = 1e-3;

/// Allowed excursion outside the unit cube before a step is declared unstable.
const CUBE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SirParams {
    pub r0: f64,
    pub s0: f64,
    pub i0: f64,
    pub rec0: f64,
    pub dt: f64,
    pub t_end: f64,
}

impl SirParams {
    /// Parameters with the default step `0.01` and horizon `200`.
    pub fn new(r0: f64, s0: f64, i0: f64, rec0: f64) -> Result<Self> {
        Self {
            r0,
            s0,
            i0,
            rec0,
            dt: 0.01,
            t_end: 200.0,
        }
        .validated()
    }

    pub fn with_steps(self, dt: f64, t_end: f64) -> Result<Self> {
        Self { dt, t_end, ..self }.validated()
    }

    pub fn validated(self) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidArgument(m));
        if !(self.r0 > 1.0) || !self.r0.is_finite() {
            return bad(format!("R0 must exceed 1, got {}", self.r0));
        }
        let open = |v: f64| v > 0.0 && v < 1.0;
        if !open(self.s0) || !open(self.i0) || !(self.rec0 >= 0.0 && self.rec0 < 1.0) {
            return bad(format!(
                "initial fractions out of range: ({}, {}, {})",
                self.s0, self.i0, self.rec0
            ));
        }
        if self.s0 + self.i0 + self.rec0 > 1.0 + 1e-12 {
            return bad("initial fractions sum above 1".into());
        }
        if !(self.dt > 0.0) || !(self.t_end > 0.0) || !self.t_end.is_finite() {
            return bad(format!("bad step {} or horizon {}", self.dt, self.t_end));
        }
        Ok(self)
    }

    pub fn id(&self) -> String {
        format!("r0={},s0={},i0={}", self.r0, self.s0, self.i0)
    }
}

/// Outbreak battery: `R0 ∈ {1.5, 2, 4}`, `S0 ∈ {0.9, 0.99}`, `I0 ∈ {0.01, 0.1}`
/// with `S0 + I0 <= 1`, no initial recovered.
pub fn battery() -> Vec<SirParams> {
    let mut out = Vec::new();
    for r0 in [1.5, 2.0, 4.0] {
        for s0 in [0.9, 0.99] {
            for i0 in [0.01, 0.1] {
                if let Ok(p) = SirParams::new(r0, s0, i0, 0.0) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// `count` base indices spread evenly over `[0, end)`.
pub fn chord_bases(end: usize, count: usize) -> Vec<usize> {
    (0..count).map(|j| j * end / count.max(1)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SirState {
    pub t: f64,
    pub s: f64,
    pub i: f64,
    pub r: f64,
}

/// `I + S - ln(S)/R0`.
pub fn conserved_quantity(r0: f64, s: f64, i: f64) -> f64 {
    i + s - s.ln() / r0
}

#[derive(Debug, Clone)]
pub struct SirTrajectory {
    pub params: SirParams,
    pub states: Vec<SirState>,
}

impl SirTrajectory {
    pub fn initial_invariant(&self) -> f64 {
        conserved_quantity(self.params.r0, self.params.s0, self.params.i0)
    }

    /// Signed drift of the conserved quantity at each state.
    pub fn drift(&self) -> Vec<f64> {
        let base = self.initial_invariant();
        self.states
            .iter()
            .map(|st| conserved_quantity(self.params.r0, st.s, st.i) - base)
            .collect()
    }

    pub fn max_drift(&self) -> f64 {
        self.drift().into_iter().fold(0.0, |m, d| m.max(d.abs()))
    }

    pub fn last(&self) -> &SirState {
        self.states.last().expect("trajectory is never empty")
    }

    fn interpolant(&self, name: &str, pick: impl Fn(&SirState) -> f64) -> Result<RealFn> {
        let ts = self.states.iter().map(|s| s.t).collect();
        let vs = self.states.iter().map(pick).collect();
        Ok(Pchip::new(ts, vs)?.into_real_fn(name))
    }

    /// `S` as a monotone cubic interpolant of the trajectory.
    pub fn s_fn(&self) -> Result<RealFn> {
        self.interpolant("S", |s| s.s)
    }

    /// `I` as a monotone cubic interpolant; shape-preserving on each monotone segment.
    pub fn i_fn(&self) -> Result<RealFn> {
        self.interpolant("I", |s| s.i)
    }

    /// Index of the first state after the epidemic peak with
    /// `I < CHORD_RESOLUTION · max I`. Beyond it `S` has settled to the point
    /// where chord slopes `(I(t) - I(c))/(S(t) - S(c))` differ by less than
    /// floating-point resolution between neighbouring states.
    pub fn resolved_end(&self) -> usize {
        let peak = self
            .states
            .iter()
            .enumerate()
            .fold(
                (0, f64::MIN),
                |best, (k, s)| if s.i > best.1 { (k, s.i) } else { best },
            );
        (peak.0..self.states.len())
            .find(|&k| self.states[k].i < CHORD_RESOLUTION * peak.1)
            .unwrap_or(self.states.len() - 1)
    }

    /// Time interval of the trajectory with base point at state `c_index`.
    pub fn interval(&self, c_index: usize) -> Result<Interval> {
        let c = self.state(c_index)?.t;
        Interval::new(self.states[0].t, self.last().t, c)
    }

    fn state(&self, index: usize) -> Result<&SirState> {
        self.states.get(index).ok_or_else(|| {
            Error::InvalidArgument(format!(
                "state index {index} outside trajectory of length {}",
                self.states.len()
            ))
        })
    }
}

fn rhs(r0: f64, s: f64, i: f64) -> (f64, f64, f64) {
    let infection = r0 * s * i;
    (-infection, infection - i, i)
}

/// Classical fixed-step fourth-order Runge–Kutta from `t = 0` to `t_end`.
pub fn sir_integrate(p: &SirParams) -> Result<SirTrajectory> {
    let p = p.validated()?;
    let steps = (p.t_end / p.dt).round().max(1.0) as usize;
    let dt = p.dt;
    let mut states = Vec::with_capacity(steps + 1);
    let (mut s, mut i, mut r) = (p.s0, p.i0, p.rec0);
    states.push(SirState { t: 0.0, s, i, r });
    for k in 1..=steps {
        let (a1, b1, c1) = rhs(p.r0, s, i);
        let (a2, b2, c2) = rhs(p.r0, s + 0.5 * dt * a1, i + 0.5 * dt * b1);
        let (a3, b3, c3) = rhs(p.r0, s + 0.5 * dt * a2, i + 0.5 * dt * b2);
        let (a4, b4, c4) = rhs(p.r0, s + dt * a3, i + dt * b3);
        s += dt / 6.0 * (a1 + 2.0 * a2 + 2.0 * a3 + a4);
        i += dt / 6.0 * (b1 + 2.0 * b2 + 2.0 * b3 + b4);
        r += dt / 6.0 * (c1 + 2.0 * c2 + 2.0 * c3 + c4);
        let t = k as f64 * dt;
        let inside = |v: f64| (-CUBE_SLACK..=1.0 + CUBE_SLACK).contains(&v);
        if !(inside(s) && inside(i) && inside(r)) {
            return Err(Error::Instability { t, s, i, r });
        }
        states.push(SirState { t, s, i, r });
    }
    Ok(SirTrajectory { params: p, states })
}

/// `S(∞) = -W0(-R0 S0 e^{-R0 (S0 + I0)}) / R0`.
pub fn final_size_formula(p: &SirParams) -> Result<f64> {
    let x = -p.r0 * p.s0 * (-p.r0 * (p.s0 + p.i0)).exp();
    Ok(-lambert_w0(x)? / p.r0)
}

/// `(S(∞) from the Lambert formula, S(t_end) from the integrated trajectory)`.
pub fn sir_final_size(p: &SirParams) -> Result<(f64, f64)> {
    let formula = final_size_formula(p)?;
    if !(formula > 0.0 && formula < 1.0 / p.r0) {
        return Err(Error::InvalidArgument(format!(
            "final size {formula} outside (0, 1/R0)"
        )));
    }
    let traj = sir_integrate(p)?;
    Ok((formula, traj.last().s))
}

fn tau_strict(cfg: &CheckConfig, a: impl Iterator<Item = f64>) -> f64 {
    cfg.thresholds.tau_strict(a)
}

/// Checks `I(t) < I(c) + (1/(R0 S(c)) - 1)(S(t) - S(c))` at every state other
/// than `c`. Strict mode demands a margin above `τ_strict`; otherwise a
/// shortfall up to `τ_strict` is tolerated.
pub fn sir_apriori_check(
    traj: &SirTrajectory,
    c_index: usize,
    strict: bool,
    cfg: &CheckConfig,
) -> Result<bool> {
    let c = *traj.state(c_index)?;
    let slope = 1.0 / (traj.params.r0 * c.s) - 1.0;
    let gaps: Vec<f64> = traj
        .states
        .iter()
        .enumerate()
        .filter(|&(k, _)| k != c_index)
        .map(|(_, st)| c.i + slope * (st.s - c.s) - st.i)
        .collect();
    let tau = tau_strict(cfg, traj.states.iter().flat_map(|s| [s.s, s.i]));
    Ok(gaps
        .iter()
        .all(|&g| if strict { g > tau } else { g > -tau }))
}

/// `(t, (I(t) - I(c))/(S(t) - S(c)))` for every `stride`-th state up to
/// `t_max`, skipping `c` itself.
pub fn chord_ratios(
    traj: &SirTrajectory,
    c_index: usize,
    stride: usize,
    t_max: f64,
) -> Result<Vec<(f64, f64)>> {
    let c = *traj.state(c_index)?;
    let stride = stride.max(1);
    Ok(traj
        .states
        .iter()
        .enumerate()
        .filter(|&(k, st)| k != c_index && k % stride == 0 && st.t <= t_max)
        .map(|(_, st)| (st.t, (st.i - c.i) / (st.s - c.s)))
        .collect())
}

/// Mean version of the a priori estimate:
/// `M(n,I,c)(t) < I(c) + (1/(R0 S(c)) - 1)(M(n,S,c)(t) - S(c))`, checked at
/// [`MEAN_CHECK_POINTS`] evenly spaced states other than `c`.
pub fn sir_mean_apriori_check(
    traj: &SirTrajectory,
    n: usize,
    c_index: usize,
    strict: bool,
    cfg: &CheckConfig,
) -> Result<bool> {
    Ok(sir_mean_apriori_gaps(traj, n, c_index, cfg)?
        .into_iter()
        .all(|(_, gap, tau)| if strict { gap > tau } else { gap > -tau }))
}

/// `(t, rhs - lhs, τ_strict)` for the mean a priori inequality.
pub fn sir_mean_apriori_gaps(
    traj: &SirTrajectory,
    n: usize,
    c_index: usize,
    cfg: &CheckConfig,
) -> Result<Vec<(f64, f64, f64)>> {
    let c = *traj.state(c_index)?;
    let iv = traj.interval(c_index)?;
    let s_fn = traj.s_fn()?;
    let i_fn = traj.i_fn()?;
    let slope = 1.0 / (traj.params.r0 * c.s) - 1.0;
    let last = traj.states.len() - 1;
    let mut picks: Vec<usize> = (1..=MEAN_CHECK_POINTS)
        .map(|j| j * last / MEAN_CHECK_POINTS)
        .chain([0])
        .filter(|&k| k != c_index && !iv.is_near_base(traj.states[k].t))
        .collect();
    picks.sort_unstable();
    picks.dedup();

    let tau = tau_strict(cfg, traj.states.iter().flat_map(|s| [s.s, s.i]));
    let rows = crate::monotone::sample(
        &crate::interval::Grid::from_points(
            picks.iter().map(|&k| traj.states[k].t).collect(),
            true,
        )?,
        |t| {
            let mi = mean(n, &i_fn, &iv, t, &cfg.quad)?;
            let ms = mean(n, &s_fn, &iv, t, &cfg.quad)?;
            Ok(c.i + slope * (ms - c.s) - mi)
        },
    )?;
    Ok(rows.into_iter().map(|(t, gap)| (t, gap, tau)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monotone::monotonicity_of;

    fn base() -> SirParams {
        SirParams::new(2.0, 0.99, 0.01, 0.0).unwrap()
    }

    #[test]
    fn battery_is_feasible() {
        let b = battery();
        assert_eq!(b.len(), 9);
        assert!(b.iter().all(|p| p.s0 + p.i0 <= 1.0 + 1e-12));
        assert_eq!(chord_bases(100, 5), vec![0, 20, 40, 60, 80]);
    }

    #[test]
    fn params_validation() {
        assert!(SirParams::new(1.0, 0.5, 0.1, 0.0).is_err());
        assert!(SirParams::new(2.0, 0.0, 0.1, 0.0).is_err());
        assert!(SirParams::new(2.0, 0.95, 0.1, 0.0).is_err());
        assert!(SirParams::new(2.0, 0.5, 0.1, 1.0).is_err());
        assert!(base().with_steps(0.0, 10.0).is_err());
        assert!(base().with_steps(0.1, 10.0).is_ok());
    }

    #[test]
    fn disease_free_limit() {
        let p = SirParams::new(2.0, 0.99, 1e-12, 0.0)
            .unwrap()
            .with_steps(0.01, 5.0)
            .unwrap();
        let traj = sir_integrate(&p).unwrap();
        assert!((traj.last().s - 0.99).abs() < 1e-9);
    }

    #[test]
    fn outbreak_shape() {
        let p = base().with_steps(0.01, 50.0).unwrap();
        let traj = sir_integrate(&p).unwrap();
        assert_eq!(traj.states.len(), 5001);
        for w in traj.states.windows(2) {
            assert!(w[1].s < w[0].s);
            assert!(w[1].r > w[0].r);
        }
        let expected = 0.01 + 0.99 - 0.5 * 0.99f64.ln();
        assert_eq!(traj.initial_invariant(), expected);
        assert!((conserved_quantity(2.0, 0.99, 0.01) - expected).abs() < 1e-16);
    }

    #[test]
    fn unstable_step_detected() {
        let p = SirParams::new(4.0, 0.5, 0.5, 0.0)
            .unwrap()
            .with_steps(2.5, 20.0)
            .unwrap();
        assert!(matches!(sir_integrate(&p), Err(Error::Instability { .. })));
    }

    #[test]
    fn final_size_bounds() {
        let (formula, ode) = sir_final_size(&base()).unwrap();
        assert!(formula > 0.0 && formula < 0.5);
        assert!((formula - ode).abs() < 1e-5);
        // independent scipy value of -W0(-1.98 e^-2)/2
        assert!((formula - 0.199_796_032_323_200_78).abs() < 1e-13);
    }

    #[test]
    fn no_outbreak_regime() {
        let p = SirParams::new(2.0, 0.4, 1e-12, 0.0).unwrap();
        let (formula, ode) = sir_final_size(&p).unwrap();
        assert!((formula - 0.4).abs() < 1e-10);
        assert!((formula - ode).abs() < 1e-10);
    }

    #[test]
    fn apriori_and_chords() {
        let cfg = CheckConfig::default();
        let traj = sir_integrate(&base()).unwrap();
        assert!(sir_apriori_check(&traj, 0, true, &cfg).unwrap());
        let chords = chord_ratios(&traj, 0, 10, 30.0).unwrap();
        assert_eq!(
            monotonicity_of(chords).unwrap().verdict,
            crate::monotone::Verdict::StrictlyIncreasing
        );
        assert!(sir_apriori_check(&traj, traj.states.len(), true, &cfg).is_err());
    }
}
