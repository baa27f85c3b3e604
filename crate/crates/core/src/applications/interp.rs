//! Shape-preserving piecewise cubic Hermite interpolation (Fritsch–Carlson).

use crate::error::{Error, Result};
use crate::interval::RealFn;

/// Monotone cubic interpolant through `(x_k, y_k)`. Monotone data give a
/// monotone interpolant; local extrema of the data stay at the knots.
#[derive(Debug, Clone)]
pub struct Pchip {
    xs: Vec<f64>,
    ys: Vec<f64>,
    ds: Vec<f64>,
    uniform_step: Option<f64>,
}

impl Pchip {
    pub fn new(xs: Vec<f64>, ys: Vec<f64>) -> Result<Self> {
        if xs.len() != ys.len() {
            return Err(Error::InvalidArgument(format!(
                "knot count mismatch: {} abscissae, {} ordinates",
                xs.len(),
                ys.len()
            )));
        }
        if xs.len() < 2 {
            return Err(Error::TooFewSamples {
                got: xs.len(),
                need: 2,
            });
        }
        if let Some(i) = xs.windows(2).position(|w| !(w[0] < w[1])) {
            return Err(Error::UnorderedSamples { index: i + 1 });
        }
        let n = xs.len();
        let h: Vec<f64> = xs.windows(2).map(|w| w[1] - w[0]).collect();
        let delta: Vec<f64> = (0..n - 1).map(|k| (ys[k + 1] - ys[k]) / h[k]).collect();

        let mut ds = vec![0.0; n];
        if n == 2 {
            ds.fill(delta[0]);
        } else {
            for k in 1..n - 1 {
                let (d0, d1) = (delta[k - 1], delta[k]);
                if d0 * d1 > 0.0 {
                    let w1 = 2.0 * h[k] + h[k - 1];
                    let w2 = h[k] + 2.0 * h[k - 1];
                    ds[k] = (w1 + w2) / (w1 / d0 + w2 / d1);
                }
            }
            ds[0] = edge_slope(h[0], h[1], delta[0], delta[1]);
            ds[n - 1] = edge_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
        }

        let step = h[0];
        let uniform_step = h
            .iter()
            .all(|&hk| (hk - step).abs() <= 1e-12 * step)
            .then_some(step);
        Ok(Self {
            xs,
            ys,
            ds,
            uniform_step,
        })
    }

    pub fn knots(&self) -> (&[f64], &[f64]) {
        (&self.xs, &self.ys)
    }

    pub fn lo(&self) -> f64 {
        self.xs[0]
    }

    pub fn hi(&self) -> f64 {
        self.xs[self.xs.len() - 1]
    }

    fn segment(&self, x: f64) -> usize {
        let last = self.xs.len() - 2;
        let k = match self.uniform_step {
            Some(step) => ((x - self.xs[0]) / step).floor().max(0.0) as usize,
            None => self.xs.partition_point(|&k| k <= x).saturating_sub(1),
        };
        let mut k = k.min(last);
        // floor() can land one segment off near knots
        while k > 0 && x < self.xs[k] {
            k -= 1;
        }
        while k < last && x >= self.xs[k + 1] {
            k += 1;
        }
        k
    }

    /// Value at `x`, extrapolating the end cubics outside the knot range.
    pub fn eval(&self, x: f64) -> f64 {
        let k = self.segment(x);
        let h = self.xs[k + 1] - self.xs[k];
        let t = (x - self.xs[k]) / h;
        let t2 = t * t;
        let t3 = t2 * t;
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.ys[k] + h * h10 * self.ds[k] + h01 * self.ys[k + 1] + h * h11 * self.ds[k + 1]
    }

    pub fn derivative(&self, x: f64) -> f64 {
        let k = self.segment(x);
        let h = self.xs[k + 1] - self.xs[k];
        let t = (x - self.xs[k]) / h;
        let t2 = t * t;
        let d00 = 6.0 * t2 - 6.0 * t;
        let d10 = 3.0 * t2 - 4.0 * t + 1.0;
        let d01 = -6.0 * t2 + 6.0 * t;
        let d11 = 3.0 * t2 - 2.0 * t;
        (d00 * self.ys[k] + d01 * self.ys[k + 1]) / h + d10 * self.ds[k] + d11 * self.ds[k + 1]
    }

    /// Wraps the interpolant as a function with its first derivative.
    pub fn into_real_fn(self, name: impl Into<String>) -> RealFn {
        let shared = std::sync::Arc::new(self);
        let d = std::sync::Arc::clone(&shared);
        RealFn::new(name, move |x| shared.eval(x)).with_derivative(move |x| d.derivative(x))
    }
}

/// One-sided three-point end slope, limited to preserve shape.
fn edge_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if d.signum() != d0.signum() || d0 == 0.0 {
        0.0
    } else if d0.signum() != d1.signum() && d.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        d
    }
}
