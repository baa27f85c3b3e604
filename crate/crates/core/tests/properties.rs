use monofrac_core::battery;
use monofrac_core::monotone::sample;
use monofrac_core::{
    antideriv_cauchy, make_grid, monotonicity_of, taylor_remainder, AntiderivSpec, Interval,
    QuadConfig, RealFn, Verdict,
};
use proptest::prelude::*;

fn interval() -> impl Strategy<Value = Interval> {
    (-5.0f64..5.0, 0.1f64..4.0, 0.0f64..=1.0)
        .prop_map(|(lo, w, u)| Interval::new(lo, lo + w, lo + u * w).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn grid_is_increasing_and_inside(iv in interval(), count in 2usize..200, puncture in any::<bool>()) {
        let grid = make_grid(&iv, count, puncture).unwrap();
        prop_assert!(grid.len() >= count.saturating_sub(1).max(1));
        for w in grid.points().windows(2) {
            prop_assert!(w[0] < w[1]);
        }
        for x in grid.iter() {
            prop_assert!(iv.contains(x));
            if puncture {
                prop_assert!(!iv.is_near_base(x));
            }
        }
    }

    #[test]
    fn negation_flips_antiderivative(iv in interval(), n in 1usize..4, k in 0usize..7) {
        let f = battery::standard(iv.c()).swap_remove(k);
        let cfg = QuadConfig::default();
        let pos = AntiderivSpec::new(n, f.clone(), iv).unwrap();
        let neg = AntiderivSpec::new(n, f.negated(), iv).unwrap();
        for x in make_grid(&iv, 7, false).unwrap().iter() {
            let a = antideriv_cauchy(&pos, x, &cfg).unwrap();
            let b = antideriv_cauchy(&neg, x, &cfg).unwrap();
            prop_assert_eq!(a, -b);
        }
    }

    #[test]
    fn negation_flips_verdict(vals in prop::collection::vec(-1e3f64..1e3, 3..40)) {
        let up: Vec<(f64, f64)> = vals.iter().enumerate().map(|(i, &v)| (i as f64, v)).collect();
        let down: Vec<(f64, f64)> = up.iter().map(|&(x, v)| (x, -v)).collect();
        let a = monotonicity_of(up).unwrap().verdict;
        let b = monotonicity_of(down).unwrap().verdict;
        if a == Verdict::Nondecreasing && b == Verdict::Nondecreasing {
            // constant sequence: both sides tie-break the same way
        } else {
            prop_assert_eq!(a.flipped(), b);
        }
    }

    #[test]
    fn first_remainder_ratio_is_chord_ratio(
        c in -1.0f64..1.0,
        xs in prop::collection::vec(-1.0f64..1.0, 1..20),
        j in 0usize..3,
    ) {
        let f = battery::exp();
        let g = vec![battery::id(), battery::exp(), battery::neg_exp()].swap_remove(j);
        for x in xs.into_iter().filter(|&x| (x - c).abs() > 1e-6) {
            let r = taylor_remainder(0, &f, c, x).unwrap() / taylor_remainder(0, &g, c, x).unwrap();
            let direct = (f.eval(x) - f.eval(c)) / (g.eval(x) - g.eval(c));
            prop_assert!((r - direct).abs() <= 1e-12 * (1.0 + direct.abs()));
        }
    }

    #[test]
    fn sampling_keeps_grid_order(iv in interval(), count in 3usize..64) {
        let grid = make_grid(&iv, count, false).unwrap();
        let f = RealFn::new("cos", f64::cos);
        let s = sample(&grid, |x| Ok(f.eval(x))).unwrap();
        prop_assert_eq!(s.len(), grid.len());
        for (p, x) in s.iter().zip(grid.iter()) {
            prop_assert_eq!(p.0, x);
            prop_assert_eq!(p.1, x.cos());
        }
    }
}
