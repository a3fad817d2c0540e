use proptest::prelude::*;

use lawson::elliptic::{complete_e, complete_k, landen_gap, Modulus};
use lawson::spectral::{sl_coefficients, sl_spectrum, SlProblem, Symmetry};
use lawson::surface::{area_closed, canonicalize, coefficients, immersion, metric, validate, Family, Triple};

/// Valid generalized triples with small entries.
fn generalized() -> impl Strategy<Value = Triple> {
    (-6i64..=6, -6i64..=6, 1i64..=12)
        .prop_filter_map("not in family", |(a, b, c)| validate(Family::Generalized, a, b, Some(c)).ok())
}

fn lawson_triple() -> impl Strategy<Value = Triple> {
    (1i64..=7, 1i64..=7).prop_filter_map("degenerate", |(a, b)| validate(Family::Lawson, a, b, None).ok())
}

fn any_triple() -> impl Strategy<Value = Triple> {
    prop_oneof![3 => generalized(), 1 => lawson_triple()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn immersion_lies_on_unit_sphere(t in any_triple(), x in -10.0f64..10.0, y in -10.0f64..10.0) {
        let norm = immersion(&t, x, y).iter().map(|v| v * v).sum::<f64>().sqrt();
        prop_assert!((norm - 1.0).abs() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn canonicalize_is_idempotent(t in any_triple()) {
        prop_assert_eq!(canonicalize(&t), t);
        prop_assert!(t.is_canonical());
    }

    #[test]
    fn validation_ignores_sign_and_scale(a in -5i64..=5, b in -5i64..=5, c in 1i64..=9, s in 1i64..=4) {
        let base = validate(Family::Generalized, a, b, Some(c)).ok();
        let scaled = validate(Family::Generalized, -s * a, s * b, Some(-s * c)).ok();
        prop_assert_eq!(base, scaled);
    }

    #[test]
    fn sign_flips_are_isometries(t in generalized(), y in 0.0f64..6.3) {
        // the metric depends on a², b², c² only
        let (a, b, c) = (t.a(), t.b(), t.c_int().unwrap());
        let flipped = Triple::Generalized { a: -a, b, c: -c };
        prop_assert_eq!(metric(&t, y), metric(&flipped, y));
        let f = immersion(&t, 0.7, y);
        let g = immersion(&flipped, 0.7, y);
        let norm = |v: [f64; 6]| v.iter().map(|x| x * x).sum::<f64>();
        prop_assert!((norm(f) - norm(g)).abs() < 1e-14);
    }

    #[test]
    fn amplitudes_sum_consistently(t in generalized(), y in 0.0f64..6.3) {
        let co = coefficients(&t);
        let (s, c) = y.sin_cos();
        let sum = co.c1_sq * s * s + co.c2_sq * c * c + co.c3_sq * (1.0 - co.k2 * s * s);
        prop_assert!((sum - 1.0).abs() < 1e-13);
    }

    #[test]
    fn metric_is_positive(t in any_triple(), y in 0.0f64..6.3) {
        let (gxx, gyy) = metric(&t, y);
        prop_assert!(gxx > 0.0 && gyy > 0.0);
    }

    #[test]
    fn self_adjoint_coefficients_are_even_and_pi_periodic(t in any_triple(), l in 0u32..8, y in 0.0f64..6.3) {
        let f = sl_coefficients(&t, l);
        for g in [f.p(y), f.q(y), f.w(y)] {
            prop_assert!(g.is_finite() && g >= 0.0);
        }
        prop_assert!(f.p(y) > 0.0 && f.w(y) > 0.0);
        for (u, v) in [(f.p(y), f.p(-y)), (f.q(y), f.q(y + std::f64::consts::PI)), (f.w(y), f.w(-y + std::f64::consts::PI))] {
            prop_assert!((u - v).abs() <= 1e-12 * u.abs().max(1.0));
        }
    }

    #[test]
    fn self_adjoint_form_matches_separated_equation(
        t in any_triple(),
        l in 0u32..10,
        y in 0.0f64..6.3,
        lambda in -5.0f64..20.0,
        amp in 0.1f64..2.0,
        freq in 1.0f64..4.0,
        phase in 0.0f64..6.3,
    ) {
        // φ = amp·exp(sin(freq·y + phase))
        let u = freq * y + phase;
        let e = u.sin().exp();
        let phi = amp * e;
        let d1 = amp * freq * u.cos() * e;
        let d2 = amp * freq * freq * (u.cos().powi(2) - u.sin()) * e;
        let f = sl_coefficients(&t, l);
        let self_adjoint = -(f.p(y) * d2 + f.dp(y) * d1) + f.q(y) * phi - lambda * f.w(y) * phi;
        let original = -f.w(y) * f.separated_lhs(lambda, y, phi, d1, d2);
        prop_assert!((self_adjoint - original).abs() <= 1e-10 * (1.0 + original.abs()));
    }

    #[test]
    fn landen_transformation(k in 0.0f64..0.999) {
        prop_assert!(landen_gap(k).unwrap() <= 1e-10);
    }

    #[test]
    fn legendre_relation(k in 0.01f64..0.99) {
        let m = Modulus::from_k(k);
        let mc = Modulus::from_k2(m.complementary_k2());
        let (kk, ee) = (complete_k(m).unwrap(), complete_e(m).unwrap());
        let (kc, ec) = (complete_k(mc).unwrap(), complete_e(mc).unwrap());
        prop_assert!((ee * kc + ec * kk - kk * kc - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }

    #[test]
    fn area_is_positive_and_scales_with_degree(t in any_triple()) {
        let a = area_closed(&t).unwrap();
        prop_assert!(a.area > 0.0 && a.s >= a.area);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn spectra_are_sorted_and_start_at_zero(t in any_triple(), l in 0u32..4) {
        let s = sl_spectrum(&SlProblem::new(t, l, Symmetry::FullPeriodic), 256, 6).unwrap();
        prop_assert!(s.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        if l == 0 {
            prop_assert!(s.eigenvalues[0].abs() < 1e-9);
        } else {
            prop_assert!(s.eigenvalues[0] > 0.0);
        }
    }
}
