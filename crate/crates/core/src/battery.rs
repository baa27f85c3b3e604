//! The standard function battery used by the verification suites.

use crate::interval::{Interval, RealFn};
use crate::monotone::TheoremCase;

/// Names accepted by [`by_name`], in battery order.
pub const NAMES: [&str; 8] = [
    "one", "id", "sq", "cube", "exp", "neg_exp", "lorentz", "abs_c",
];

pub fn one() -> RealFn {
    RealFn::constant(1.0).renamed("one")
}

pub fn id() -> RealFn {
    RealFn::identity()
}

pub fn sq() -> RealFn {
    RealFn::new("sq", |t| t * t)
        .with_derivative(|t| 2.0 * t)
        .with_derivative(|_| 2.0)
        .with_derivative(|_| 0.0)
        .with_derivative(|_| 0.0)
}

pub fn cube() -> RealFn {
    RealFn::new("cube", |t| t * t * t)
        .with_derivative(|t| 3.0 * t * t)
        .with_derivative(|t| 6.0 * t)
        .with_derivative(|_| 6.0)
        .with_derivative(|_| 0.0)
}

pub fn exp() -> RealFn {
    RealFn::exp()
}

pub fn neg_exp() -> RealFn {
    RealFn::exp().negated().renamed("neg_exp")
}

/// `1/(1+t²)`.
pub fn lorentz() -> RealFn {
    RealFn::new("lorentz", |t| 1.0 / (1.0 + t * t))
        .with_derivative(|t| -2.0 * t / (1.0 + t * t).powi(2))
        .with_derivative(|t| (6.0 * t * t - 2.0) / (1.0 + t * t).powi(3))
        .with_derivative(|t| 24.0 * t * (1.0 - t * t) / (1.0 + t * t).powi(4))
        .with_derivative(|t| {
            let t2 = t * t;
            24.0 * (5.0 * t2 * t2 - 10.0 * t2 + 1.0) / (1.0 + t2).powi(5)
        })
}

/// `|t - c|`, continuous with a kink at the base point; no derivative stack.
pub fn abs_shifted(c: f64) -> RealFn {
    RealFn::new("abs_c", move |t: f64| (t - c).abs())
}

/// Looks up a battery member; `c` only matters for `abs_c`.
pub fn by_name(name: &str, c: f64) -> Option<RealFn> {
    Some(match name {
        "one" => one(),
        "id" => id(),
        "sq" => sq(),
        "cube" => cube(),
        "exp" => exp(),
        "neg_exp" => neg_exp(),
        "lorentz" => lorentz(),
        "abs_c" => abs_shifted(c),
        _ => return None,
    })
}

/// Full battery for base point `c`.
pub fn standard(c: f64) -> Vec<RealFn> {
    NAMES.iter().filter_map(|n| by_name(n, c)).collect()
}

/// Battery members carrying derivative stacks.
pub fn smooth() -> Vec<RealFn> {
    standard(0.0)
        .into_iter()
        .filter(|f| f.deriv_order() >= 4)
        .collect()
}

/// The two battery intervals with their base points: left endpoint and midpoint.
pub fn intervals() -> Vec<Interval> {
    [(0.0, 2.0), (-1.0, 1.0)]
        .into_iter()
        .flat_map(|(lo, hi)| {
            [lo, 0.5 * (lo + hi)]
                .into_iter()
                .map(move |c| Interval::new(lo, hi, c).expect("battery interval"))
        })
        .collect()
}

/// Every ordered pair of the full battery on every battery interval, for
/// each order. Pairs whose hypotheses fail are left to the caller to skip.
pub fn gromov_cases(orders: &[usize]) -> Vec<TheoremCase> {
    pair_cases(orders, standard)
}

/// As [`gromov_cases`], restricted to members with derivative stacks.
pub fn lhopital_cases(orders: &[usize]) -> Vec<TheoremCase> {
    pair_cases(orders, |_| smooth())
}

fn pair_cases(orders: &[usize], members: impl Fn(f64) -> Vec<RealFn>) -> Vec<TheoremCase> {
    let mut out = Vec::new();
    for iv in intervals() {
        let fs = members(iv.c());
        for &n in orders {
            for f in &fs {
                for g in &fs {
                    out.push(TheoremCase::new(f.clone(), g.clone(), n, iv));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interval::derivative_stack_consistency;

    #[test]
    fn names_resolve() {
        for n in NAMES {
            assert_eq!(by_name(n, 0.0).unwrap().name(), n);
        }
        assert!(by_name("nope", 0.0).is_none());
        assert_eq!(standard(0.5).len(), NAMES.len());
        assert_eq!(smooth().len(), 7);
        assert_eq!(intervals().len(), 4);
    }

    #[test]
    fn derivative_stacks_are_consistent() {
        // fixed pseudo-random interior points of [-1, 2]
        let pts: Vec<f64> = (0..10)
            .map(|i| -0.9 + 2.8 * ((i as f64 * 0.618_034) % 1.0))
            .collect();
        for f in smooth() {
            let worst = derivative_stack_consistency(&f, &pts, 2).unwrap();
            assert!(worst <= 1.0, "{}: {worst}", f.name());
        }
    }

    #[test]
    fn misdeclared_stack_is_caught() {
        let wrong = RealFn::new("sin", f64::sin).with_derivative(f64::sin);
        let worst = derivative_stack_consistency(&wrong, &[0.3, 1.1], 1).unwrap();
        assert!(worst > 1.0);
    }
}
