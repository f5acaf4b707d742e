//! Property-based checks of the algebraic contracts: norm scaling laws,
//! triangle inequalities, exponent arithmetic, admissibility monotonicity,
//! and transform unitarity on randomized inputs.

use num_complex::Complex;
use num_rational::Rational64;
use proptest::prelude::*;

use modspace::analysis::{
    admissible, region_contains, scaling_slope, ExponentConfig, ExtExponent,
};
use modspace::norms::{mixed_norm, modulation_norm, ExponentChain, ModNormSpec};
use modspace::transforms::{fourier, symplectic_fourier, WindowSpec};
use modspace::{make_grid, phase_space_axes, Field, Grid, SampledField};

fn grid8() -> Grid {
    make_grid(1, 8, 2.0).unwrap()
}

fn field_1d(vals: &[(f64, f64)]) -> Field {
    let g = grid8();
    SampledField::new(
        g.default_axes().unwrap(),
        vals.iter().map(|&(a, b)| Complex::new(a, b)).collect(),
    )
    .unwrap()
}

fn field_2d(vals: &[(f64, f64)]) -> Field {
    let g = grid8();
    SampledField::new(
        phase_space_axes(&g).unwrap(),
        vals.iter().map(|&(a, b)| Complex::new(a, b)).collect(),
    )
    .unwrap()
}

fn cval() -> impl Strategy<Value = (f64, f64)> {
    ((-1.0f64..1.0), (-1.0f64..1.0))
}

fn exponent_value() -> impl Strategy<Value = f64> {
    prop_oneof![
        Just(1.0),
        Just(1.5),
        Just(2.0),
        Just(3.0),
        Just(4.0),
        Just(f64::INFINITY),
    ]
}

fn rational_u() -> impl Strategy<Value = Rational64> {
    (1i64..=12, 0i64..=12).prop_map(|(d, n)| Rational64::new(n.min(d), d))
}

fn max_abs_diff(a: &Field, b: &Field) -> f64 {
    a.values()
        .iter()
        .zip(b.values())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mixed_norm_is_absolutely_homogeneous(
        vals in prop::collection::vec(cval(), 64),
        p in exponent_value(),
        q in exponent_value(),
        c in cval(),
    ) {
        let f = field_2d(&vals);
        let scaled = f.clone().scale(Complex::new(c.0, c.1));
        let chain = ExponentChain::of(&[("x", p), ("xi", q)]).unwrap();
        let base = mixed_norm(&f, &chain, None).unwrap();
        let lhs = mixed_norm(&scaled, &chain, None).unwrap();
        let rhs = Complex::new(c.0, c.1).norm() * base;
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.max(1.0), "{lhs} vs {rhs}");
    }

    #[test]
    fn mixed_norm_satisfies_the_triangle_inequality(
        va in prop::collection::vec(cval(), 64),
        vb in prop::collection::vec(cval(), 64),
        p in exponent_value(),
        q in exponent_value(),
    ) {
        let sum: Vec<(f64, f64)> = va
            .iter()
            .zip(&vb)
            .map(|(a, b)| (a.0 + b.0, a.1 + b.1))
            .collect();
        let (fa, fb, fs) = (field_2d(&va), field_2d(&vb), field_2d(&sum));
        let chain = ExponentChain::of(&[("x", p), ("xi", q)]).unwrap();
        let (na, nb, ns) = (
            mixed_norm(&fa, &chain, None).unwrap(),
            mixed_norm(&fb, &chain, None).unwrap(),
            mixed_norm(&fs, &chain, None).unwrap(),
        );
        prop_assert!(ns <= (na + nb) * (1.0 + 1e-12) + 1e-14, "{ns} > {na} + {nb}");
    }

    #[test]
    fn modulation_norm_is_window_homogeneous(
        vals in prop::collection::vec(cval(), 8),
        p in exponent_value(),
        q in exponent_value(),
        c in 0.1f64..3.0,
    ) {
        let f = field_1d(&vals);
        let axes = f.axes().to_vec();
        let w = WindowSpec::standard_gaussian().materialize(&axes).unwrap();
        let base = modulation_norm(
            &f,
            &ModNormSpec::euclidean(p, q, WindowSpec::explicit(w.clone())).unwrap(),
        )
        .unwrap();
        let scaled = modulation_norm(
            &f,
            &ModNormSpec::euclidean(
                p,
                q,
                WindowSpec::explicit(w.scale(Complex::new(c, 0.0))),
            )
            .unwrap(),
        )
        .unwrap();
        prop_assert!(
            (scaled - c * base).abs() <= 1e-10 * (c * base).max(1.0),
            "{scaled} vs {}",
            c * base
        );
    }

    #[test]
    fn exponent_conjugation_is_an_involution(u in rational_u()) {
        let e = ExtExponent::from_reciprocal(u).unwrap();
        prop_assert_eq!(e.conjugate().conjugate(), e);
        prop_assert_eq!(e.reciprocal() + e.conjugate().reciprocal(), Rational64::new(1, 1));
        let round = ExtExponent::parse(&e.to_string()).unwrap();
        prop_assert_eq!(round, e);
    }

    #[test]
    fn admissibility_is_monotone_in_the_final_exponents(
        us in prop::collection::vec(rational_u(), 8),
        bump3 in rational_u(),
        bump4 in rational_u(),
    ) {
        let one = Rational64::new(1, 1);
        let e = |u: Rational64| ExtExponent::from_reciprocal(u).unwrap();
        let cfg = ExponentConfig::new(
            [e(us[0]), e(us[1]), e(us[2]), e(us[3])],
            [e(us[4]), e(us[5]), e(us[6]), e(us[7])],
        );
        let before = admissible(&cfg);
        // Raising u₃ and u₄ (pushing the final exponents toward 1) can only
        // keep a satisfied side satisfied.
        let raised = ExponentConfig::new(
            [
                cfg.p[0],
                cfg.p[1],
                e((us[2] + bump3).min(one)),
                e((us[3] + bump4).min(one)),
            ],
            [
                cfg.q[0],
                cfg.q[1],
                e((us[6] + bump3).min(one)),
                e((us[7] + bump4).min(one)),
            ],
        );
        let after = admissible(&raised);
        let p_before = before.legs()[..3].iter().all(|(_, ok)| *ok);
        let p_after = after.legs()[..3].iter().all(|(_, ok)| *ok);
        let q_before = before.legs()[3..].iter().all(|(_, ok)| *ok);
        let q_after = after.legs()[3..].iter().all(|(_, ok)| *ok);
        prop_assert!(!p_before || p_after);
        prop_assert!(!q_before || q_after);
    }

    #[test]
    fn region_membership_matches_the_condition_breakdown(
        u1 in rational_u(),
        u2 in rational_u(),
        u3 in rational_u(),
        u4 in rational_u(),
    ) {
        let e = |u: Rational64| ExtExponent::from_reciprocal(u).unwrap();
        let (x1, x2) = (e(u1), e(u2));
        let two = ExtExponent::from_ratio(2, 1).unwrap();
        let cfg = ExponentConfig::new([x1, x2, e(u3), e(u4)], [two; 4]);
        let p_side = admissible(&cfg).legs()[..3].iter().all(|(_, ok)| *ok);
        prop_assert_eq!(region_contains(x1, x2, u3, u4), p_side);
    }

    #[test]
    fn slope_fit_recovers_exact_power_laws(
        s in -2.0f64..2.0,
        logc in -2.0f64..2.0,
    ) {
        let lambdas = [1.0, 2.0, 4.0, 8.0, 16.0];
        let values: Vec<f64> = lambdas.iter().map(|&l: &f64| logc.exp() * l.powf(s)).collect();
        let fit = scaling_slope(&lambdas, &values).unwrap();
        prop_assert!((fit.slope - s).abs() < 1e-9, "fit {} for s {}", fit.slope, s);
        prop_assert!(fit.max_residual < 1e-9);
    }

    #[test]
    fn fourier_preserves_l2_mass(vals in prop::collection::vec(cval(), 8)) {
        let f = field_1d(&vals);
        let chain = ExponentChain::of(&[("x", 2.0)]).unwrap();
        let nf = mixed_norm(&f, &chain, None).unwrap();
        prop_assume!(nf > 1e-9);
        let fhat = fourier(&f).unwrap();
        let dual_chain = ExponentChain::of(&[("nu", 2.0)]).unwrap();
        let nhat = mixed_norm(&fhat, &dual_chain, None).unwrap();
        prop_assert!((nf - nhat).abs() <= 1e-12 * nf, "{nf} vs {nhat}");
    }

    #[test]
    fn symplectic_transform_is_an_involution(vals in prop::collection::vec(cval(), 64)) {
        let f = field_2d(&vals);
        let twice = symplectic_fourier(&symplectic_fourier(&f).unwrap()).unwrap();
        let scale = f.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
        prop_assume!(scale > 0.0);
        prop_assert!(max_abs_diff(&f, &twice) <= 1e-12 * scale);
    }
}
