//! The verification suites. Each suite is a list of independent jobs run in
//! parallel; results are collected in job order so file names and report
//! rows do not depend on scheduling.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt::Display;
use std::time::Instant;

use monofrac_core::applications::{
    chord_bases, chord_ratios, final_size_formula, monte_carlo_ball_of, radial, radial_battery,
    radial_integral_of, sir_apriori_check, sir_battery, sir_integrate, sir_mean_apriori_gaps,
    RadialCase, SirParams,
};
use monofrac_core::monotone::{function_report, is_convex_on, mean_convexity};
use monofrac_core::{
    antideriv_cauchy, antideriv_repeated, antideriv_semigroup_check, battery, factorial, inherits,
    make_grid, remainder_integral_check, sign_check, verify_gromov, verify_lhopital,
    verify_mean_monotone, zero_set_check_a, zero_set_check_r, AntiderivSpec, CheckConfig, Error,
    Interval, MonotonicityReport, RealFn, Sign, TheoremCase, Verdict,
};
use rayon::prelude::*;

use crate::config::{pair_case, radial_case, sir_params, SuiteName, UserCases};
use crate::report::{CaseRecord, Curve, CURVE_DIR};

/// Points per interval for the calculus oracle checks.
pub const ORACLE_POINTS: usize = 20;
/// Points per interval for the semigroup check, which nests two quadratures.
pub const SEMIGROUP_POINTS: usize = 9;
/// Theorem orders exercised by the battery suites.
pub const ORDERS: [usize; 3] = [1, 2, 3];
/// Allowed conservation drift over the SIR trajectory.
pub const SIR_DRIFT_TOL: f64 = 1e-8;
/// Allowed gap between the Lambert final size and `S(t_end)`.
pub const SIR_FINAL_SIZE_TOL: f64 = 1e-5;
/// Trajectory states per row of the SIR curve file.
pub const SIR_CSV_STRIDE: usize = 10;
/// States between chord samples along the SIR orbit.
pub const CHORD_STRIDE: usize = 10;
pub const CHORD_BASES: usize = 5;
/// Relative tolerance of the unit-ball measures.
pub const BALL_MEASURE_TOL: f64 = 1e-10;
/// Monte Carlo agreement in standard errors.
pub const MC_SIGMAS: f64 = 3.0;

/// Everything a suite needs besides its own battery.
#[derive(Debug, Clone)]
pub struct Context {
    pub check: CheckConfig,
    pub grid: usize,
    pub seed: u64,
    pub mc_samples: usize,
    pub cases: UserCases,
}

/// Outcome of a single check before it is tied to a suite.
#[derive(Debug, Clone)]
struct Check {
    case: String,
    verdicts: BTreeMap<String, String>,
    max_violation: f64,
    pass: bool,
    detail: Option<String>,
    wall_time_ms: f64,
    curve: Option<Curve>,
}

impl Check {
    fn new(case: String, started: Instant, pass: bool, max_violation: f64) -> Self {
        Self {
            case,
            verdicts: BTreeMap::new(),
            // normalises -0.0 so the summary does not depend on fold order
            max_violation: max_violation + 0.0,
            pass,
            detail: None,
            wall_time_ms: started.elapsed().as_secs_f64() * 1e3,
            curve: None,
        }
    }

    fn failed(case: String, started: Instant, e: impl Display) -> Self {
        Self::new(case, started, false, f64::NAN).detail(e.to_string())
    }

    fn vacuous(case: String, started: Instant, why: impl Display) -> Self {
        Self::new(case, started, true, 0.0)
            .verdict("hypothesis", "unsatisfied")
            .detail(format!("hypothesis not satisfied, nothing to check: {why}"))
    }

    fn verdict(mut self, key: &str, v: impl Display) -> Self {
        self.verdicts.insert(key.to_string(), v.to_string());
        self
    }

    fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = Some(d.into());
        self
    }

    fn curve(mut self, columns: Vec<&'static str>, rows: Vec<Vec<Option<f64>>>) -> Self {
        self.curve = Some(Curve {
            file: String::new(),
            columns,
            rows,
        });
        self
    }
}

type Job<'a> = Box<dyn Fn() -> Vec<Check> + Send + Sync + 'a>;

fn job<'a>(f: impl Fn() -> Vec<Check> + Send + Sync + 'a) -> Job<'a> {
    Box::new(f)
}

/// Runs one suite, returning its records and curves.
pub fn run_suite(suite: SuiteName, ctx: &Context) -> (Vec<CaseRecord>, Vec<Curve>) {
    let jobs = match suite {
        SuiteName::CalculusOracles => calculus_jobs(ctx),
        SuiteName::Gromov => theorem_jobs(ctx, false),
        SuiteName::Lhopital => theorem_jobs(ctx, true),
        SuiteName::ZeroSets => zero_set_jobs(ctx),
        SuiteName::MeanCorollaries => mean_jobs(ctx),
        SuiteName::Sir => sir_jobs(ctx),
        SuiteName::Radial => radial_jobs(ctx),
    };
    let checks: Vec<Check> = jobs.par_iter().flat_map_iter(|j| j()).collect();

    let mut records = Vec::with_capacity(checks.len());
    let mut curves = Vec::new();
    for check in checks {
        let curve_file = check.curve.map(|mut c| {
            c.file = format!("{CURVE_DIR}/{suite}_{:04}.csv", curves.len());
            let name = c.file.clone();
            curves.push(c);
            name
        });
        records.push(CaseRecord {
            suite,
            case: check.case,
            verdicts: check.verdicts,
            max_violation: check.max_violation,
            wall_time_ms: check.wall_time_ms,
            pass: check.pass,
            detail: check.detail,
            curve: curve_file,
        });
    }
    (records, curves)
}

fn excess(err: f64, tol: f64) -> f64 {
    (err - tol).max(0.0)
}

fn oracle_tol(v: f64) -> f64 {
    (1e-6 * v.abs()).max(1e-7)
}

fn iv_label(iv: &Interval) -> String {
    format!("I=[{},{}],c={}", iv.lo(), iv.hi(), iv.c())
}

/// Worst excess over sample points of `|a - b| - tol(a)`; the first error aborts.
fn compare_at(
    points: &[f64],
    tol: impl Fn(f64) -> f64,
    pair: impl Fn(f64) -> monofrac_core::Result<(f64, f64)>,
) -> monofrac_core::Result<f64> {
    let mut worst = 0.0f64;
    for &x in points {
        let (a, b) = pair(x)?;
        let e = excess((a - b).abs(), tol(a));
        if e.is_nan() {
            return Err(Error::NonFinite { x });
        }
        worst = worst.max(e);
    }
    Ok(worst)
}

fn comparison(case: String, started: Instant, out: monofrac_core::Result<f64>) -> Check {
    match out {
        Ok(worst) => Check::new(case, started, worst == 0.0, worst),
        Err(e) => Check::failed(case, started, e),
    }
}

fn calculus_jobs(ctx: &Context) -> Vec<Job<'_>> {
    let quad = ctx.check.quad;
    let mut jobs = Vec::new();
    for iv in battery::intervals() {
        let pts = make_grid(&iv, ORACLE_POINTS, false)
            .expect("battery grid")
            .points()
            .to_vec();
        let semi_pts = make_grid(&iv, SEMIGROUP_POINTS, false)
            .expect("battery grid")
            .points()
            .to_vec();
        for n in 1..=4 {
            let pts = pts.clone();
            jobs.push(job(move || {
                let t0 = Instant::now();
                let spec = AntiderivSpec::new(n, battery::one(), iv).expect("order >= 1");
                let out = compare_at(
                    &pts,
                    |_| 1e-10,
                    |x| {
                        Ok((
                            antideriv_cauchy(&spec, x, &quad)?,
                            (x - iv.c()).powi(n as i32) / factorial(n),
                        ))
                    },
                );
                vec![comparison(
                    format!("closed_form n={n} {}", iv_label(&iv)),
                    t0,
                    out,
                )]
            }));
        }
        for f in battery::standard(iv.c()) {
            for n in [2, 3] {
                let (f, pts, semi_pts) = (f.clone(), pts.clone(), semi_pts.clone());
                jobs.push(job(move || {
                    let t0 = Instant::now();
                    let spec = AntiderivSpec::new(n, f.clone(), iv).expect("order >= 1");
                    let out = compare_at(&pts, oracle_tol, |x| {
                        Ok((
                            antideriv_cauchy(&spec, x, &quad)?,
                            antideriv_repeated(&spec, x, &quad)?,
                        ))
                    });
                    let mut checks = vec![comparison(
                        format!("oracle f={} n={n} {}", f.name(), iv_label(&iv)),
                        t0,
                        out,
                    )];
                    for k in 1..n {
                        let t0 = Instant::now();
                        let out = compare_at(&semi_pts, oracle_tol, |x| {
                            antideriv_semigroup_check(&spec, k, x, &quad)
                        });
                        checks.push(comparison(
                            format!("semigroup f={} n={n} k={k} {}", f.name(), iv_label(&iv)),
                            t0,
                            out,
                        ));
                    }
                    checks
                }));
            }
        }
        for f in battery::smooth() {
            for n in 1..=3 {
                let (f, pts) = (f.clone(), pts.clone());
                jobs.push(job(move || {
                    let t0 = Instant::now();
                    let out = compare_at(&pts, oracle_tol, |x| {
                        remainder_integral_check(n, &f, &iv, x, &quad)
                    });
                    vec![comparison(
                        format!("remainder f={} n={n} {}", f.name(), iv_label(&iv)),
                        t0,
                        out,
                    )]
                }));
            }
        }
    }
    jobs
}

/// Rows `x, ratio_hyp, ratio_concl` over the union of both sample sets.
fn ratio_rows(hyp: &MonotonicityReport, concl: &MonotonicityReport) -> Vec<Vec<Option<f64>>> {
    let mut rows: BTreeMap<u64, [Option<f64>; 3]> = BTreeMap::new();
    // order-preserving key for finite floats
    let key = |x: f64| {
        let b = x.to_bits();
        if x.is_sign_negative() {
            !b
        } else {
            b | (1 << 63)
        }
    };
    for &(x, v) in &hyp.samples {
        rows.entry(key(x)).or_insert([Some(x), None, None])[1] = Some(v);
    }
    for &(x, v) in &concl.samples {
        rows.entry(key(x)).or_insert([Some(x), None, None])[2] = Some(v);
    }
    rows.into_values().map(|r| r.to_vec()).collect()
}

/// Pass iff the conclusion satisfies the hypothesis verdict at resolution `τ`.
fn inheritance(
    case: String,
    t0: Instant,
    hyp: &MonotonicityReport,
    concl: &MonotonicityReport,
) -> Check {
    let pass = inherits(hyp, concl);
    let mut check = Check::new(case, t0, pass, concl.max_violation(hyp.verdict))
        .verdict("hypothesis", hyp.verdict)
        .verdict("conclusion", concl.verdict);
    if !pass {
        check = check.detail(format!(
            "conclusion `{}` does not satisfy `{}` at tau = {:e}",
            concl.verdict, hyp.verdict, concl.tau
        ));
    }
    check
}

fn theorem_check(case: &TheoremCase, ctx: &Context, derivative: bool, user: bool) -> Vec<Check> {
    let t0 = Instant::now();
    let label = format!("{} {}", if user { "user" } else { "battery" }, case.id());
    let out = if derivative {
        verify_lhopital(case, &ctx.check, ctx.grid)
    } else {
        verify_gromov(case, &ctx.check, ctx.grid)
    };
    let (hyp, concl) = match out {
        Ok(r) => r,
        Err(e @ (Error::Hypothesis(_) | Error::VanishingDerivative { .. })) => {
            return if user {
                vec![Check::vacuous(label, t0, e)]
            } else {
                vec![]
            };
        }
        Err(e) => return vec![Check::failed(label, t0, e)],
    };
    if hyp.verdict == Verdict::NotMonotone {
        return if user {
            vec![Check::vacuous(label, t0, "sampled ratio is not monotone")]
        } else {
            vec![]
        };
    }
    let mut check = inheritance(label, t0, &hyp, &concl);
    if derivative && case.n == 1 {
        // at order one the remainder ratio is the chord ratio itself
        let c = case.iv.c();
        let worst = concl
            .samples
            .iter()
            .map(|&(x, v)| {
                let direct = (case.f.eval(x) - case.f.eval(c)) / (case.g.eval(x) - case.g.eval(c));
                excess((v - direct).abs(), 1e-12 * (1.0 + direct.abs()))
            })
            .fold(0.0, f64::max);
        check = check.verdict("chord_match", worst == 0.0);
        if worst > 0.0 {
            check.pass = false;
            check.max_violation = check.max_violation.max(worst);
            check.detail = Some(format!(
                "remainder ratio differs from chord ratio by {worst:e}"
            ));
        }
    }
    let rows = ratio_rows(&hyp, &concl);
    vec![check.curve(vec!["x", "ratio_hyp", "ratio_concl"], rows)]
}

fn theorem_jobs(ctx: &Context, derivative: bool) -> Vec<Job<'_>> {
    let (cases, user) = if derivative {
        (battery::lhopital_cases(&ORDERS), &ctx.cases.lhopital)
    } else {
        (battery::gromov_cases(&ORDERS), &ctx.cases.gromov)
    };
    let mut jobs: Vec<Job<'_>> = cases
        .into_iter()
        .map(|case| job(move || theorem_check(&case, ctx, derivative, false)))
        .collect();
    for spec in user {
        jobs.push(job(move || match pair_case(spec) {
            Ok(case) => theorem_check(&case, ctx, derivative, true),
            Err(e) => vec![Check::failed(format!("user {spec:?}"), Instant::now(), e)],
        }));
    }
    jobs
}

fn zero_check(case: String, t0: Instant, out: monofrac_core::Result<bool>) -> Check {
    match out {
        Ok(only_base) => Check::new(case, t0, only_base, 0.0).verdict(
            "zero_set",
            if only_base {
                "base_point_only"
            } else {
                "extra_zero"
            },
        ),
        Err(e) => Check::failed(case, t0, e),
    }
}

fn zero_set_jobs(ctx: &Context) -> Vec<Job<'_>> {
    let mut jobs = Vec::new();
    for iv in battery::intervals() {
        let grid = make_grid(&iv, ctx.grid, false).expect("grid size validated");
        for f in battery::standard(iv.c()) {
            let strict_sign = sign_check(&f, &iv, &grid) != Sign::Mixed;
            for n in ORDERS {
                if strict_sign {
                    let (f, grid) = (f.clone(), grid.clone());
                    jobs.push(job(move || {
                        let t0 = Instant::now();
                        let spec = AntiderivSpec::new(n, f.clone(), iv).expect("order >= 1");
                        let label = format!("A f={} n={n} {}", f.name(), iv_label(&iv));
                        vec![zero_check(
                            label,
                            t0,
                            zero_set_check_a(&spec, &grid, &ctx.check),
                        )]
                    }));
                }
                let derivative_sign = f.deriv_order() >= n
                    && sign_check(&f.derivative(n).expect("order checked"), &iv, &grid)
                        != Sign::Mixed;
                if derivative_sign {
                    let (f, grid) = (f.clone(), grid.clone());
                    jobs.push(job(move || {
                        let t0 = Instant::now();
                        let label = format!("R f={} n={n} {}", f.name(), iv_label(&iv));
                        let out =
                            zero_set_check_r(n, &f, iv.c(), &iv, &grid, &ctx.check.thresholds);
                        vec![zero_check(label, t0, out)]
                    }));
                }
            }
        }
    }
    jobs
}

fn mean_monotone_check(f: &RealFn, n: usize, iv: Interval, ctx: &Context) -> Check {
    let t0 = Instant::now();
    let label = format!("monotone f={} n={n} {}", f.name(), iv_label(&iv));
    let run = || -> monofrac_core::Result<Check> {
        let grid = make_grid(&iv, ctx.grid, false)?;
        let own = function_report(f, &grid, &ctx.check.thresholds)?;
        let m = verify_mean_monotone(n, f, &iv, &ctx.check)?;
        let rows = m
            .samples
            .iter()
            .map(|&(x, v)| vec![Some(x), Some(f.eval(x)), Some(v)])
            .collect();
        Ok(inheritance(label.clone(), t0, &own, &m).curve(vec!["x", "f", "mean"], rows))
    };
    run().unwrap_or_else(|e| Check::failed(label.clone(), t0, e))
}

fn mean_convex_check(f: &RealFn, n: usize, iv: Interval, ctx: &Context) -> Check {
    let t0 = Instant::now();
    let label = format!("convex f={} n={n} {}", f.name(), iv_label(&iv));
    match mean_convexity(n, f, &iv, &ctx.check, ctx.grid) {
        Ok(r) => {
            let pass = r.is_convex();
            let violation = excess(r.max_slope_drop, r.slope_tau)
                .max(r.chord.max_violation(Verdict::Nondecreasing));
            Check::new(label, t0, pass, violation)
                .verdict("convex", pass)
                .verdict("chord", r.chord.verdict)
        }
        Err(e) => Check::failed(label, t0, e),
    }
}

fn mean_jobs(ctx: &Context) -> Vec<Job<'_>> {
    let mut jobs = Vec::new();
    for iv in battery::intervals() {
        let grid = make_grid(&iv, ctx.grid, false).expect("grid size validated");
        for f in battery::standard(iv.c()) {
            let monotone = function_report(&f, &grid, &ctx.check.thresholds)
                .map(|r| r.verdict != Verdict::NotMonotone)
                .unwrap_or(false);
            let convex = is_convex_on(&f, &grid, &ctx.check.thresholds);
            for n in ORDERS {
                if monotone {
                    let f = f.clone();
                    jobs.push(job(move || vec![mean_monotone_check(&f, n, iv, ctx)]));
                }
                if convex {
                    let f = f.clone();
                    jobs.push(job(move || vec![mean_convex_check(&f, n, iv, ctx)]));
                }
            }
        }
    }
    jobs
}

fn sir_checks(p: &SirParams, label: &str, ctx: &Context) -> Vec<Check> {
    let t0 = Instant::now();
    let traj = match sir_integrate(p) {
        Ok(t) => t,
        Err(e) => return vec![Check::failed(format!("{label} integrate"), t0, e)],
    };
    let drift = traj.drift();
    let max_drift = drift.iter().fold(0.0f64, |m, d| m.max(d.abs()));
    let rows = traj
        .states
        .iter()
        .zip(&drift)
        .step_by(SIR_CSV_STRIDE)
        .map(|(s, &d)| vec![Some(s.t), Some(s.s), Some(s.i), Some(s.r), Some(d)])
        .collect();
    let mut out = vec![Check::new(
        format!("{label} conservation"),
        t0,
        max_drift <= SIR_DRIFT_TOL,
        excess(max_drift, SIR_DRIFT_TOL),
    )
    .detail(format!("max drift {max_drift:e}"))
    .curve(vec!["t", "S", "I", "R", "invariant_drift"], rows)];

    let t0 = Instant::now();
    out.push(match final_size_formula(p) {
        Ok(formula) => {
            let gap = (formula - traj.last().s).abs();
            let bounded = formula > 0.0 && formula < 1.0 / p.r0;
            Check::new(
                format!("{label} final_size"),
                t0,
                bounded && gap <= SIR_FINAL_SIZE_TOL,
                excess(gap, SIR_FINAL_SIZE_TOL),
            )
            .detail(format!(
                "S_inf = {formula:.12}, S(t_end) = {:.12}",
                traj.last().s
            ))
        }
        Err(e) => Check::failed(format!("{label} final_size"), t0, e),
    });

    let t0 = Instant::now();
    out.push(match sir_apriori_check(&traj, 0, true, &ctx.check) {
        Ok(ok) => Check::new(format!("{label} apriori c=0"), t0, ok, 0.0).verdict("strict", ok),
        Err(e) => Check::failed(format!("{label} apriori c=0"), t0, e),
    });

    let t0 = Instant::now();
    let end = traj.resolved_end();
    let t_max = traj.states[end].t;
    let mut chord = Check::new(format!("{label} chords"), t0, true, 0.0);
    for c in chord_bases(end, CHORD_BASES) {
        let key = format!("t_c={}", traj.states[c].t);
        match chord_ratios(&traj, c, CHORD_STRIDE, t_max)
            .and_then(|s| monofrac_core::monotonicity_with(s, &ctx.check.thresholds))
        {
            Ok(r) => {
                chord.pass &= r.verdict == Verdict::StrictlyIncreasing;
                chord.max_violation = chord
                    .max_violation
                    .max(r.max_violation(Verdict::StrictlyIncreasing));
                chord = chord.verdict(&key, r.verdict);
            }
            Err(e) => {
                chord.pass = false;
                chord = chord.verdict(&key, "error").detail(e.to_string());
            }
        }
    }
    chord.wall_time_ms = t0.elapsed().as_secs_f64() * 1e3;
    out.push(chord.detail(format!("orbit up to t = {t_max}")));

    for n in ORDERS {
        let t0 = Instant::now();
        let case = format!("{label} mean_apriori n={n} c=0");
        out.push(match sir_mean_apriori_gaps(&traj, n, 0, &ctx.check) {
            Ok(gaps) => {
                let pass = gaps.iter().all(|&(_, gap, tau)| gap > tau);
                let worst = gaps
                    .iter()
                    .map(|&(_, gap, tau)| excess(tau, gap))
                    .fold(0.0, f64::max);
                Check::new(case, t0, pass, worst).verdict("strict", pass)
            }
            Err(e) => Check::failed(case, t0, e),
        });
    }
    out
}

fn sir_jobs(ctx: &Context) -> Vec<Job<'_>> {
    let mut jobs: Vec<Job<'_>> = sir_battery()
        .into_iter()
        .map(|p| job(move || sir_checks(&p, &format!("battery {}", p.id()), ctx)))
        .collect();
    for spec in &ctx.cases.sir {
        jobs.push(job(move || match sir_params(spec) {
            Ok(p) => sir_checks(&p, &format!("user {}", p.id()), ctx),
            Err(e) => vec![Check::failed(format!("user {spec:?}"), Instant::now(), e)],
        }));
    }
    jobs
}

/// Unit-ball measures `π^{d/2}/Γ(d/2 + 1)` for `d = 1..=6`.
const UNIT_BALL: [f64; 6] = [
    2.0,
    PI,
    4.0 * PI / 3.0,
    PI * PI / 2.0,
    8.0 * PI * PI / 15.0,
    PI * PI * PI / 6.0,
];

fn radial_ratio_check(case: &RadialCase, ctx: &Context, label: String) -> Vec<Check> {
    let t0 = Instant::now();
    let out = make_grid(&case.interval(), ctx.grid, false).and_then(|grid| {
        monofrac_core::applications::verify_radial_monotone(case, &ctx.check, &grid)
    });
    match out {
        Ok((hyp, _)) if hyp.verdict == Verdict::NotMonotone => {
            vec![Check::vacuous(
                label,
                t0,
                "sampled profile ratio is not monotone",
            )]
        }
        Ok((hyp, concl)) => {
            let rows = ratio_rows(&hyp, &concl);
            vec![inheritance(label, t0, &hyp, &concl)
                .curve(vec!["r", "ratio_hyp", "ratio_concl"], rows)]
        }
        Err(e @ Error::Hypothesis(_)) => vec![Check::vacuous(label, t0, e)],
        Err(e) => vec![Check::failed(label, t0, e)],
    }
}

fn monte_carlo_check(
    dim: usize,
    f: &RealFn,
    r: f64,
    ctx: &Context,
    seed: u64,
    label: String,
) -> Check {
    let t0 = Instant::now();
    let case = match RadialCase::new(dim, f.clone(), battery::one(), r) {
        Ok(c) => c,
        Err(e) => return Check::failed(label, t0, e),
    };
    let out = radial_integral_of(&case, f, r, &ctx.check.quad)
        .and_then(|exact| Ok((exact, monte_carlo_ball_of(dim, f, r, ctx.mc_samples, seed)?)));
    match out {
        Ok((exact, (est, se))) => {
            let gap = (est - exact).abs();
            Check::new(
                label,
                t0,
                gap <= MC_SIGMAS * se,
                excess(gap, MC_SIGMAS * se),
            )
            .detail(format!(
                "reduction {exact:.12}, monte carlo {est:.12} ± {se:.3e}"
            ))
        }
        Err(e) => Check::failed(label, t0, e),
    }
}

/// Per-case stream seed derived from the run seed.
fn case_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

fn radial_jobs(ctx: &Context) -> Vec<Job<'_>> {
    let mut jobs: Vec<Job<'_>> = Vec::new();
    for (k, &volume) in UNIT_BALL.iter().enumerate() {
        let dim = k + 1;
        jobs.push(job(move || {
            let t0 = Instant::now();
            let label = format!("unit_ball dim={dim}");
            let out = RadialCase::new(dim, battery::one(), battery::one(), 1.0)
                .and_then(|case| radial_integral_of(&case, &case.f, 1.0, &ctx.check.quad));
            vec![match out {
                Ok(v) => {
                    let err = (v - volume).abs() / volume;
                    Check::new(
                        label,
                        t0,
                        err <= BALL_MEASURE_TOL,
                        excess(err, BALL_MEASURE_TOL),
                    )
                    .detail(format!("{v:.15} vs {volume:.15}"))
                }
                Err(e) => Check::failed(label, t0, e),
            }]
        }));
    }
    for case in radial_battery(radial::MAX_DIM, 1.0).expect("battery radius") {
        jobs.push(job(move || {
            radial_ratio_check(&case, ctx, format!("battery ratio {}", case.id()))
        }));
    }
    let mut mc_index = 0;
    for dim in 1..=3 {
        for name in radial::BATTERY_PROFILES {
            let seed = case_seed(ctx.seed, mc_index);
            mc_index += 1;
            jobs.push(job(move || {
                let f = battery::by_name(name, 0.0).expect("battery name");
                vec![monte_carlo_check(
                    dim,
                    &f,
                    1.0,
                    ctx,
                    seed,
                    format!("battery monte_carlo dim={dim},f={name}"),
                )]
            }));
        }
    }
    for spec in &ctx.cases.radial {
        let seed = case_seed(ctx.seed, mc_index);
        mc_index += 1;
        jobs.push(job(move || {
            let case = match radial_case(spec) {
                Ok(c) => c,
                Err(e) => return vec![Check::failed(format!("user {spec:?}"), Instant::now(), e)],
            };
            let mut out = radial_ratio_check(&case, ctx, format!("user ratio {}", case.id()));
            if case.dim <= 3 {
                out.push(monte_carlo_check(
                    case.dim,
                    &case.f,
                    case.r_max,
                    ctx,
                    seed,
                    format!("user monte_carlo {}", case.id()),
                ));
            }
            out
        }));
    }
    jobs
}
