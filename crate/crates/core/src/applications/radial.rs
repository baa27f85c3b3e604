//! Radial functions on balls: `∫_{B(0,r)} f(r - |x|) dx` reduces to a
//! high-order antiderivative of `f` via polar coordinates.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::calculus::{antideriv_cauchy, factorial, AntiderivSpec};
use crate::error::{Error, Result};
use crate::interval::{Grid, Interval, RealFn};
use crate::monotone::{
    monotonicity_with, sample, sign_check, CheckConfig, MonotonicityReport, Sign,
};
use crate::quad::QuadConfig;

/// Largest supported ball dimension.
pub const MAX_DIM: usize = 6;

/// Independent RNG streams per Monte Carlo run; fixed so results do not
/// depend on the thread count.
pub const MC_BATCHES: usize = 64;

/// Allowed relative disagreement between the ratio with and without the
/// polar-coordinate constants.
pub const CONSTANT_RATIO_TOL: f64 = 1e-12;

/// `Γ(d/2)` for `1 <= d <= 6`, from `Γ(1/2) = √π`, `Γ(1) = 1` and `Γ(z+1) = zΓ(z)`.
pub fn gamma_half(d: usize) -> Result<f64> {
    if d == 0 || d > MAX_DIM {
        return Err(Error::Dimension(d));
    }
    let (mut z, mut g) = if d % 2 == 1 {
        (0.5, PI.sqrt())
    } else {
        (1.0, 1.0)
    };
    while z < d as f64 / 2.0 {
        g *= z;
        z += 1.0;
    }
    Ok(g)
}

/// Surface measure of the unit sphere in `R^d`: `2 π^{d/2} / Γ(d/2)`.
pub fn sphere_constant(d: usize) -> Result<f64> {
    Ok(2.0 * PI.powf(d as f64 / 2.0) / gamma_half(d)?)
}

#[derive(Debug, Clone)]
pub struct RadialCase {
    pub dim: usize,
    pub f: RealFn,
    pub g: RealFn,
    pub r_max: f64,
}

impl RadialCase {
    pub fn new(dim: usize, f: RealFn, g: RealFn, r_max: f64) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::Dimension(dim));
        }
        if !(r_max > 0.0) || !r_max.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "r_max must be positive, got {r_max}"
            )));
        }
        Ok(Self { dim, f, g, r_max })
    }

    /// `[0, r_max]` with base point `0`.
    pub fn interval(&self) -> Interval {
        Interval::new(0.0, self.r_max, 0.0).expect("r_max > 0")
    }

    pub fn id(&self) -> String {
        format!("dim={},f={},g={}", self.dim, self.f.name(), self.g.name())
    }
}

/// Profiles and weights for the radial battery on `[0, r_max]`. Every weight is
/// positive there and every ratio is monotone for `r_max <= 1`.
pub const BATTERY_PROFILES: [&str; 6] = ["one", "id", "sq", "exp", "neg_exp", "lorentz"];
pub const BATTERY_WEIGHTS: [&str; 3] = ["one", "exp", "lorentz"];

/// Radial battery: every profile against every weight in dimensions `1..=max_dim`.
pub fn battery(max_dim: usize, r_max: f64) -> Result<Vec<RadialCase>> {
    let mut out = Vec::new();
    for dim in 1..=max_dim {
        for f in BATTERY_PROFILES {
            for g in BATTERY_WEIGHTS {
                let lookup = |name| crate::battery::by_name(name, 0.0).expect("battery name");
                out.push(RadialCase::new(dim, lookup(f), lookup(g), r_max)?);
            }
        }
    }
    Ok(out)
}

fn check_radius(case: &RadialCase, r: f64) -> Result<()> {
    if r > 0.0 && r <= case.r_max {
        Ok(())
    } else {
        Err(Error::Domain { x: r })
    }
}

/// `A(d, f, 0)(r)` on `[0, r_max]`.
fn radial_antideriv(dim: usize, f: &RealFn, iv: Interval, r: f64, cfg: &QuadConfig) -> Result<f64> {
    antideriv_cauchy(&AntiderivSpec::new(dim, f.clone(), iv)?, r, cfg)
}

/// `∫_{B(0,r)} f(r - |x|) dx = 2π^{d/2}(d-1)!/Γ(d/2) · A(d, f, 0)(r)` for `f = case.f`.
pub fn radial_integral(case: &RadialCase, r: f64, cfg: &QuadConfig) -> Result<f64> {
    radial_integral_of(case, &case.f, r, cfg)
}

/// [`radial_integral`] for any profile on the case's radius range.
pub fn radial_integral_of(case: &RadialCase, f: &RealFn, r: f64, cfg: &QuadConfig) -> Result<f64> {
    check_radius(case, r)?;
    let a = radial_antideriv(case.dim, f, case.interval(), r, cfg)?;
    Ok(sphere_constant(case.dim)? * factorial(case.dim - 1) * a)
}

/// Monte Carlo estimate of `∫_{B(0,r)} case.f(r - |x|) dx` by uniform
/// sampling of the cube `[-r, r]^d`, with its standard error.
pub fn monte_carlo_ball(
    case: &RadialCase,
    r: f64,
    samples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    monte_carlo_ball_of(case.dim, &case.f, r, samples, seed)
}

/// Sample `b` of `MC_BATCHES` uses the ChaCha8 stream `b` of the generator
/// seeded with `seed`; batch sums are combined in batch order.
pub fn monte_carlo_ball_of(
    dim: usize,
    f: &RealFn,
    r: f64,
    samples: usize,
    seed: u64,
) -> Result<(f64, f64)> {
    if !(1..=3).contains(&dim) {
        return Err(Error::Dimension(dim));
    }
    if samples < 10_000 {
        return Err(Error::InvalidArgument(format!(
            "at least 10^4 samples required, got {samples}"
        )));
    }
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain { x: r });
    }
    let batch_sums: Vec<(f64, f64)> = (0..MC_BATCHES)
        .into_par_iter()
        .map(|b| {
            let count = samples / MC_BATCHES + usize::from(b < samples % MC_BATCHES);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(b as u64);
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for _ in 0..count {
                let mut norm_sq = 0.0;
                for _ in 0..dim {
                    let u = r * (2.0 * rng.random::<f64>() - 1.0);
                    norm_sq += u * u;
                }
                let norm = norm_sq.sqrt();
                if norm < r {
                    let v = f.eval(r - norm);
                    sum += v;
                    sum_sq += v * v;
                }
            }
            (sum, sum_sq)
        })
        .collect();
    let (sum, sum_sq) = batch_sums
        .iter()
        .fold((0.0, 0.0), |(s, q), &(bs, bq)| (s + bs, q + bq));
    let n = samples as f64;
    let volume = (2.0 * r).powi(dim as i32);
    let m = sum / n;
    let var = (sum_sq / n - m * m).max(0.0) * n / (n - 1.0);
    Ok((volume * m, volume * (var / n).sqrt()))
}

/// Reports for `f/g` on the grid and for the ratio of ball integrals over the
/// grid radii `r > 0`. The ball ratio is also recomputed as
/// `A(d,f,0)/A(d,g,0)`; a relative disagreement above
/// [`CONSTANT_RATIO_TOL`] is an error.
pub fn verify_radial_monotone(
    case: &RadialCase,
    cfg: &CheckConfig,
    grid: &Grid,
) -> Result<(MonotonicityReport, MonotonicityReport)> {
    let iv = case.interval();
    if sign_check(&case.g, &iv, grid) == Sign::Mixed {
        return Err(Error::Hypothesis(format!(
            "`{}` changes sign on [0, {}]",
            case.g.name(),
            case.r_max
        )));
    }
    let th = &cfg.thresholds;
    let hyp_samples = grid
        .iter()
        .filter(|&x| !case.f.is_excluded(x) && !case.g.is_excluded(x))
        .map(|x| (x, case.f.eval(x) / case.g.eval(x)))
        .collect();
    let hypothesis = monotonicity_with(hyp_samples, th)?;

    let radii = Grid::from_points(grid.iter().filter(|&r| !iv.is_near_base(r)).collect(), true)?;
    let pairs = sample(&radii, |r| {
        let with_constants = radial_integral_of(case, &case.f, r, &cfg.quad)?
            / radial_integral_of(case, &case.g, r, &cfg.quad)?;
        let bare = radial_antideriv(case.dim, &case.f, iv, r, &cfg.quad)?
            / radial_antideriv(case.dim, &case.g, iv, r, &cfg.quad)?;
        let rel = (with_constants - bare).abs() / bare.abs().max(f64::MIN_POSITIVE);
        if rel > CONSTANT_RATIO_TOL {
            return Err(Error::ConstantMismatch(rel));
        }
        Ok(with_constants)
    })?;
    Ok((hypothesis, monotonicity_with(pairs, th)?))
}
