use std::f64::consts::E;

use crate::error::{Error, Result};

/// Principal branch `W0` on `[-1/e, 0]`: the `w ∈ [-1, 0]` with `w·e^w = x`.
///
/// Halley iteration safeguarded by the bracket `[-1, 0]`; any step leaving
/// the current bracket is replaced by bisection.
pub fn lambert_w0(x: f64) -> Result<f64> {
    let branch = -1.0 / E;
    if !(x >= branch - 4.0 * f64::EPSILON && x <= 0.0) {
        return Err(Error::Domain { x });
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let x = x.max(branch);
    let residual = |w: f64| w * w.exp() - x;

    let (mut lo, mut hi) = (-1.0_f64, 0.0_f64);
    // series about the branch point, else the first terms of the Taylor series about 0
    let p2 = 2.0 * (E * x + 1.0);
    let mut w = if p2 < 0.5 {
        let p = p2.max(0.0).sqrt();
        -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p
    } else {
        x - x * x + 1.5 * x * x * x
    }
    .clamp(lo, hi);

    for _ in 0..200 {
        let r = residual(w);
        if r == 0.0 {
            return Ok(w);
        }
        if r > 0.0 {
            hi = w;
        } else {
            lo = w;
        }
        let ew = w.exp();
        let d1 = ew * (w + 1.0);
        let next = if d1 > 0.0 {
            // Halley: w - r / (d1 - (w + 2) r / (2 (w + 1)))
            let denom = d1 - (w + 2.0) * r / (2.0 * (w + 1.0));
            w - r / denom
        } else {
            f64::NAN
        };
        let next = if next.is_finite() && next > lo && next < hi {
            next
        } else {
            0.5 * (lo + hi)
        };
        if next == w || hi - lo <= f64::EPSILON * w.abs().max(1e-300) {
            return Ok(best_of(w, next, residual));
        }
        w = next;
    }
    Ok(w)
}

fn best_of(a: f64, b: f64, residual: impl Fn(f64) -> f64) -> f64 {
    if residual(a).abs() <= residual(b).abs() {
        a
    } else {
        b
    }
}
