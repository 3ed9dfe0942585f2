//! Property tests for the algebraic kernels, the operator, the bounds and the
//! membership tests.

use faberkit_core::bounds::{bound_a2, bound_a3, bound_an_gap};
use faberkit_core::operator::operator_series;
use faberkit_core::scalar::{int, rat, rational_to_f64};
use faberkit_core::{
    faber_k, halfplane_membership, inverse_coeffs, published_f, schwarz_extract, subordination_membership, ClassParams,
    ExactSeries, FaberQuery, PhiSpec, Rational, SamplingGrid, Series, Verdict,
};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=9).prop_map(|(p, q)| rat(p, q))
}

fn unit_rational() -> impl Strategy<Value = Rational> {
    (-4i64..=4, 1i64..=4).prop_map(|(p, q)| rat(p, 4 * q))
}

fn series(order: usize) -> impl Strategy<Value = ExactSeries> {
    prop::collection::vec(small_rational(), order + 1).prop_map(|c| Series::new(c).unwrap())
}

fn unit_series(order: usize) -> impl Strategy<Value = ExactSeries> {
    prop::collection::vec(small_rational(), order).prop_map(|c| {
        let mut all = vec![int(1)];
        all.extend(c);
        Series::new(all).unwrap()
    })
}

fn normalized(order: usize) -> impl Strategy<Value = ExactSeries> {
    prop::collection::vec(small_rational(), order - 1).prop_map(move |tail| ExactSeries::normalized(&tail, order))
}

fn params() -> impl Strategy<Value = ClassParams> {
    (0i64..=24, 0i64..=18, 0i64..=18, 1i64..=6)
        .prop_map(|(m, l, d, q)| ClassParams::triple(rat(m, 6), int(1) + rat(l, 6), rat(d, q)).unwrap())
}

fn nonzero_exponent() -> impl Strategy<Value = i64> {
    prop_oneof![-10i64..=-1, 1i64..=10]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_commutes_and_distributes(a in series(8), b in series(8), c in series(8)) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&(&a - &a), &ExactSeries::zero(8));
    }

    #[test]
    fn product_rule(a in series(9), b in series(9)) {
        let lhs = (&a * &b).derive().unwrap();
        let rhs = &(&a.derive().unwrap() * &b.truncate(8)) + &(&a.truncate(8) * &b.derive().unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn powers_add(u in unit_series(7), p in small_rational(), q in small_rational()) {
        let lhs = u.pow(p.clone() + q.clone()).unwrap();
        let rhs = &u.pow(p).unwrap() * &u.pow(q).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reversion_is_a_two_sided_inverse(f in normalized(12)) {
        let g = f.revert().unwrap();
        prop_assert_eq!(f.compose(&g).unwrap(), ExactSeries::identity(12));
        prop_assert_eq!(g.compose(&f).unwrap(), ExactSeries::identity(12));
    }

    #[test]
    fn inverse_coefficients_match_reversion(f in normalized(10)) {
        prop_assert_eq!(inverse_coeffs(&f, 10).unwrap(), f.revert().unwrap());
    }

    #[test]
    fn faber_coefficients_are_power_coefficients(f in normalized(9), p in nonzero_exponent()) {
        let power = f.div_z().unwrap().pow(p).unwrap();
        for n in 1..=8 {
            let k = faber_k(&FaberQuery::new(&f, n, p).unwrap()).unwrap();
            prop_assert_eq!(&k, power.coeff(n), "n = {}", n);
        }
    }

    #[test]
    fn faber_coefficient_is_a_polynomial_in_p(f in normalized(8)) {
        // K_n^p has degree n in p and vanishes at p = 0, so the (n+1)-st
        // forward difference over p = 0..=n+1 is zero; K_n^1 = a_{n+1}.
        for n in 1..=6usize {
            let k = |p: i64| faber_k(&FaberQuery::new(&f, n, p).unwrap()).unwrap();
            prop_assert_eq!(k(1), f.coeff(n + 1).clone());
            let mut diff = int(0);
            let mut binom = int(1);
            for j in 1..=(n as i64 + 1) {
                binom = binom * int(n as i64 + 2 - j) / int(j);
                let term = binom.clone() * k(j);
                diff = if j % 2 == 0 { diff + term } else { diff - term };
            }
            prop_assert_eq!(diff, int(0), "n = {}", n);
        }
    }

    #[test]
    fn float_backend_tracks_exact(tail in prop::collection::vec(unit_rational(), 11)) {
        let f = ExactSeries::normalized(&tail, 12);
        let ff = f.to_float();
        let exact = [f.revert().unwrap(), &f * &f, f.div_z().unwrap().pow(rat(-3, 2)).unwrap()];
        let float = [ff.revert().unwrap(), &ff * &ff, ff.div_z().unwrap().pow(-1.5f64).unwrap()];
        for (e, x) in exact.iter().zip(&float) {
            for (a, b) in e.coeffs().iter().zip(x.coeffs()) {
                let a = rational_to_f64(a);
                prop_assert!((a - b.re).abs() <= 1e-10 * a.abs().max(1.0) && b.im == 0.0, "{} vs {}", a, b);
            }
        }
    }

    #[test]
    fn operator_linear_term(p in params(), n in 2usize..=10, eps in small_rational()) {
        let mut tail = vec![int(0); n - 1];
        tail[n - 2] = eps.clone();
        let f = ExactSeries::normalized(&tail, n);
        let l = operator_series(&f, &p).unwrap();
        prop_assert_eq!(l.coeff(n - 1).clone(), p.linear_factor(n - 1) * eps);
    }

    #[test]
    fn first_functional_agrees(p in params(), f in normalized(6)) {
        let l = operator_series(&f, &p).unwrap();
        prop_assert_eq!(published_f(1, &f, &p).unwrap(), l.coeff(1).clone());
    }

    #[test]
    fn functionals_agree_without_curvature(p in params(), f in normalized(7)) {
        let p = ClassParams::triple(p.mu().clone(), p.lambda().clone(), int(0)).unwrap();
        let l = operator_series(&f, &p).unwrap();
        for k in 1..=5 {
            prop_assert_eq!(published_f(k, &f, &p).unwrap(), l.coeff(k).clone(), "k = {}", k);
        }
    }

    #[test]
    fn bounds_shrink_as_delta_grows(p in params(), extra in 1i64..=8) {
        let q = ClassParams::triple(p.mu().clone(), p.lambda().clone(), p.delta().clone() + rat(extra, 2)).unwrap();
        prop_assert!(bound_a2(&q).value.to_f64() <= bound_a2(&p).value.to_f64());
        prop_assert!(bound_a3(&q).value <= bound_a3(&p).value);
        for n in 4..=9 {
            prop_assert!(bound_an_gap(n, &q).unwrap() <= bound_an_gap(n, &p).unwrap());
            prop_assert!(bound_an_gap(n + 1, &p).unwrap() < bound_an_gap(n, &p).unwrap());
        }
    }
}

fn small_grid() -> SamplingGrid {
    SamplingGrid { samples_per_circle: 192, ..SamplingGrid::default() }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn membership_is_deterministic_and_methods_agree(a in (-10i64..=10).prop_map(|k| rat(k, 40)), mu in 0i64..=2, delta in 0i64..=1) {
        let f = ExactSeries::normalized(&[a], 12);
        let p = ClassParams::ints(mu, 1, delta).unwrap();
        let grid = small_grid();
        let h = halfplane_membership(&f, &p, &grid).unwrap();
        prop_assert_eq!(&h, &halfplane_membership(&f, &p, &grid).unwrap());
        let s = subordination_membership(&f, &p, &PhiSpec::default(), &grid).unwrap();
        prop_assert_eq!(h.verdict, s.verdict);
    }

    #[test]
    fn members_have_schwarz_witnesses(a in (-8i64..=8).prop_map(|k| rat(k, 40)), mu in 0i64..=2) {
        let f = ExactSeries::normalized(&[a], 12);
        let p = ClassParams::ints(mu, 1, 0).unwrap();
        let grid = small_grid();
        let phi = PhiSpec::default();
        if halfplane_membership(&f, &p, &grid).unwrap().verdict == Verdict::Member {
            let w = schwarz_extract(&f, &p, &phi, 3).unwrap();
            prop_assert!(w.residual < 1e-9);
            prop_assert!(w.t[0].abs() <= 1.0 + grid.tolerance && w.s[0].abs() <= 1.0 + grid.tolerance);
        }
    }
}
