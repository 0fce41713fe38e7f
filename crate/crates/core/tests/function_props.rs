use besov_core::config::QuadConfig;
use besov_core::families::NamedFamily;
use besov_core::func::{besov_norm, besov_seminorm, cauchy_derivative, reproduce, sup_norm, HalfPlaneFn, Variant};
use besov_core::measures::{Measure, TailBound};
use besov_core::scalar::{c, cr, C};
use besov_core::spec::parse_complex;
use proptest::prelude::*;

fn family() -> impl Strategy<Value = NamedFamily<f64>> {
    prop_oneof![
        (1u32..12).prop_map(NamedFamily::Cayley),
        (0.2f64..20.0).prop_map(NamedFamily::ExpReciprocal),
        (0.2f64..5.0).prop_map(NamedFamily::RegularizedExp),
        (0.0f64..4.0).prop_map(NamedFamily::Exponential),
        (0.1f64..4.0, -3.0f64..3.0).prop_map(|(a, b)| NamedFamily::Resolvent(c(a, b))),
        (0.1f64..4.0, -3.0f64..3.0).prop_map(|(a, b)| NamedFamily::ResolventSquare(c(a, b))),
        (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(a, b)| NamedFamily::Constant(c(a, b))),
    ]
}

fn point() -> impl Strategy<Value = C<f64>> {
    (0.05f64..6.0, -6.0f64..6.0).prop_map(|(x, y)| c(x, y))
}

fn cfg() -> QuadConfig<f64> {
    QuadConfig::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn exact_derivatives_match_cauchy(k in family(), z in point()) {
        let f = k.build().unwrap();
        for order in [1u32, 2] {
            let exact = if order == 1 { f.d1(z) } else { f.d2(z) };
            let num = cauchy_derivative(&f, z, order, 1e-10).unwrap();
            prop_assert!((exact - num).norm() <= 1e-6 * (1.0 + exact.norm()), "{} order {order} at {z}: {exact} vs {num}", f.label());
        }
    }

    #[test]
    fn complex_literals_round_trip(re in -1e3f64..1e3, im in -1e3f64..1e3) {
        let s = format!("{re:e}{im:+e}i");
        prop_assert_eq!(parse_complex(&s).unwrap(), c(re, im));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn derivative_bounded_by_sup_norm(k in family(), zs in proptest::collection::vec(point(), 8)) {
        let f = k.build().unwrap();
        let sup = sup_norm(&f, &cfg()).unwrap().value;
        for z in zs {
            prop_assert!(f.d1(z).norm() * 2.0 * z.re <= sup * (1.0 + 1e-5) + 1e-12, "{} at {z}", f.label());
        }
    }

    #[test]
    fn sup_norm_below_limit_plus_seminorm(k in family()) {
        let f = k.build().unwrap();
        let sup = sup_norm(&f, &cfg()).unwrap().value;
        let semi = besov_seminorm(&f, &cfg()).unwrap().value;
        prop_assert!(sup <= f.at_infinity().norm() + semi + 1e-6, "{}: {sup} > {} + {semi}", f.label(), f.at_infinity().norm());
    }

    #[test]
    fn shift_does_not_increase_norm(k in family(), a in 0.0f64..3.0, b in -3.0f64..3.0) {
        let f = k.build().unwrap();
        let n0 = besov_norm(&f, &cfg()).unwrap().value;
        let n1 = besov_norm(&f.shift(c(a, b)), &cfg()).unwrap().value;
        prop_assert!(n1 <= n0 * (1.0 + 1e-4) + 1e-6, "{}: {n1} > {n0}", f.label());
    }

    #[test]
    fn rescaling_is_an_isometry(k in family(), b in prop_oneof![Just(0.1f64), Just(7.0), Just(50.0)]) {
        let f = k.build().unwrap();
        let n0 = besov_norm(&f, &cfg()).unwrap().value;
        let n1 = besov_norm(&f.rescale(b), &cfg()).unwrap().value;
        prop_assert!((n1 - n0).abs() <= 1e-4 * n0, "{} by {b}: {n1} vs {n0}", f.label());
    }

    #[test]
    fn first_reproducing_formula(k in family(), z in point()) {
        let f = k.build().unwrap();
        let got = reproduce(&f, z, Variant::First, &cfg()).unwrap().value;
        prop_assert!((got - f.eval(z)).norm() <= 1e-4 * (1.0 + f.eval(z).norm()), "{} at {z}: {got}", f.label());
    }

    #[test]
    fn h1_members_decay(a in 0.2f64..3.0, b in -2.0f64..2.0, theta in -1.4f64..1.4) {
        let g = NamedFamily::ResolventSquare(c(a, b)).build().unwrap();
        let mut last = f64::INFINITY;
        for r in [1e2, 1e4, 1e6] {
            let z = c(r * theta.cos(), r * theta.sin());
            let v = g.eval(z).norm() + g.d1(z).norm();
            prop_assert!(v < last);
            last = v;
        }
        prop_assert!(last < 1e-10);
    }
}

fn measure() -> impl Strategy<Value = Measure<f64>> {
    prop_oneof![
        (0.0f64..3.0, -2.0f64..2.0).prop_map(|(t, w)| Measure::atoms(vec![(t, cr(w))]).unwrap()),
        (0.2f64..3.0, -2.0f64..2.0, -1.0f64..1.0).prop_map(|(l, a, b)| Measure::exp_density(c(a, b), l).unwrap()),
        (0.5f64..3.0).prop_map(|l| Measure::with_density(move |t: f64| cr(t * (-l * t).exp()), TailBound::Exponential { c: 4.0 / (l * l), rate: l / 2.0 })
            .unwrap()
            .with_moments(move |z, k| cr([1.0, 2.0, 6.0][k as usize]) / (z + l).powi(k + 2))),
        (1u32..4).prop_map(|n| Measure::cayley(n).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(6))]

    #[test]
    fn convolution_multiplies_transforms(m in measure(), n in measure(), zs in proptest::collection::vec(point(), 4)) {
        let conv = m.convolve(&n, &cfg()).unwrap();
        for z in zs {
            let lhs = conv.laplace(z).unwrap();
            let rhs = m.laplace(z).unwrap() * n.laplace(z).unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-5 * (1.0 + rhs.norm()), "{z}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn hp_norm_is_submultiplicative(m in measure(), n in measure()) {
        let c0 = cfg();
        let conv = m.convolve(&n, &c0).unwrap();
        let a = m.hp_norm(&c0).unwrap().value;
        let b = n.hp_norm(&c0).unwrap().value;
        let ab = conv.hp_norm(&c0).unwrap().value;
        prop_assert!(ab <= a * b * (1.0 + 1e-4) + 1e-6, "{ab} > {a} * {b}");
    }

    #[test]
    fn laplace_transform_norm_bounded_by_twice_hp(m in measure()) {
        let c0 = cfg();
        let f: HalfPlaneFn<f64> = m.laplace_fn();
        let b = besov_norm(&f, &c0).unwrap().value;
        let hp = m.hp_norm(&c0).unwrap().value;
        prop_assert!(b <= 2.0 * hp + 1e-4, "{b} > 2 * {hp}");
    }
}
