//! Integrand construction, published principal values, and the invariance
//! properties of the Mellin-Barnes quadrature.

use angle_spaces::enumerate_taut_in_component;
use mellin_barnes::{
    beta_invariant, build_integrand, mb_integral, MbError, PvQuadratureConfig,
};
use special_functions::{c_q, euler_beta, g_q, log_gamma, Complex, QParam};
use trimesh_io::{load_triangulation, AngleAssignment, TriangulationData};

fn fixture(name: &str) -> (TriangulationData, AngleAssignment) {
    load_triangulation(&format!("../../fixtures/{name}.json")).unwrap()
}

#[test]
fn figure_eight_integrand_is_a_squared_beta_weight() {
    let (tri, a) = fixture("4_1");
    let taut = enumerate_taut_in_component(&tri, &a).unwrap();
    assert_eq!(taut.len(), 1);
    let ig = build_integrand(&tri, &taut[0], &a).unwrap();
    let third = Complex::new(1.0 / 3.0, 0.0);
    for x in [-2.3, -0.4, 0.0, 0.7, 1.9] {
        let s = Complex::new(0.0, x);
        let b = euler_beta(third + s, third + s).unwrap();
        let got = ig.value(&[x]).unwrap();
        assert!((got - b * b).norm() < 1e-12 * b.norm().powi(2).max(1e-30));
    }
}

#[test]
fn m011_integrand_matches_the_printed_two_variable_product() {
    // the fixture contour differs from the printed one by a translation in
    // the row span of the deformation rows; shift it back, then the forms
    // agree under a unimodular change of the two contour variables
    let (tri, a) = fixture("m011");
    let taut = enumerate_taut_in_component(&tri, &a).unwrap();
    let y2 = 3.0 / 16.0 - a.a[0];
    let y1 = a.a[3] - 9.0 / 16.0 - y2;
    let y = [y1, y2];
    let shifted = AngleAssignment {
        a: (0..9)
            .map(|q| a.a[q] + y[0] * tri.lstar[0][q] as f64 + y[1] * tri.lstar[1][q] as f64)
            .collect(),
    };
    let ig = build_integrand(&tri, &taut[2], &shifted).unwrap();
    let printed = |s1: Complex, s2: Complex| -> Complex {
        let b1 = euler_beta(
            Complex::new(3.0 / 16.0, 0.0) - s1,
            Complex::new(9.0 / 16.0, 0.0) + 2.0 * s1 - s2,
        )
        .unwrap();
        let b2 = euler_beta(
            Complex::new(1.0 / 8.0, 0.0) + 2.0 * s2,
            Complex::new(3.0 / 4.0, 0.0) + s1 - s2,
        )
        .unwrap();
        b1 * b1 * b2
    };
    for (x1, x2) in [(0.37, -0.81), (-1.4, 0.3), (0.0, 2.2)] {
        let got = ig.value(&[x1, x2]).unwrap();
        // variable identification: s1' = i x2, s2' = i (x2 - x1)
        let want = printed(Complex::new(0.0, x2), Complex::new(0.0, x2 - x1));
        assert!(
            (got - want).norm() < 1e-12 * want.norm(),
            "({x1},{x2}): {got} vs {want}"
        );
    }
}

#[test]
fn integrand_has_conjugation_symmetry() {
    let (tri, a) = fixture("m011");
    let taut = enumerate_taut_in_component(&tri, &a).unwrap();
    for t in &taut {
        let ig = build_integrand(&tri, t, &a).unwrap();
        for (x1, x2) in [(0.9, -0.2), (-3.1, 1.7), (0.45, 0.45)] {
            let plus = ig.value(&[x1, x2]).unwrap();
            let minus = ig.value(&[-x1, -x2]).unwrap();
            assert!((minus - plus.conj()).norm() < 1e-12 * plus.norm());
        }
    }
}

#[test]
fn figure_eight_principal_value_vanishes() {
    let (tri, a) = fixture("4_1");
    let taut = enumerate_taut_in_component(&tri, &a).unwrap();
    let ig = build_integrand(&tri, &taut[0], &a).unwrap();
    let out = mb_integral(&ig, &PvQuadratureConfig::for_dim(1)).unwrap();
    assert!(out.value.abs() < 1e-3, "value {:.2e}", out.value);
    assert!(out.converged && out.spread < 2e-3, "spread {:.2e}", out.spread);
}

#[test]
fn five_two_principal_values_match_published() {
    let (tri, a) = fixture("5_2");
    let taut = enumerate_taut_in_component(&tri, &a).unwrap();
    assert_eq!(taut.len(), 3);
    let cfg = PvQuadratureConfig::for_dim(2);
    let values: Vec<f64> = taut
        .iter()
        .map(|t| mb_integral(&build_integrand(&tri, t, &a).unwrap(), &cfg).unwrap())
        .map(|o| {
            assert!(o.converged && o.spread < 1e-2, "spread {:.2e}", o.spread);
            o.value
        })
        .collect();
    // one structure carries 0.534, the other two vanish
    let mut sorted = values.clone();
    sorted.sort_by(f64::total_cmp);
    assert!(sorted[0].abs() < 5e-3 && sorted[1].abs() < 5e-3, "{values:?}");
    assert!((sorted[2] - 0.534).abs() < 5e-3, "{values:?}");
}

#[test]
fn m011_principal_values_match_published() {
    let (tri, a) = fixture("m011");
    let taut = enumerate_taut_in_component(&tri, &a).unwrap();
    let cfg = PvQuadratureConfig::for_dim(2);
    let values: Vec<f64> = taut
        .iter()
        .map(|t| mb_integral(&build_integrand(&tri, t, &a).unwrap(), &cfg).unwrap())
        .map(|o| {
            assert!(o.converged && o.spread < 1e-2);
            o.value
        })
        .collect();
    for target in [0.6616, 0.5050] {
        assert!(
            values.iter().any(|v| (v - target).abs() < 5e-3),
            "no summand near {target}: {values:?}"
        );
    }
}

#[test]
fn beta_invariant_of_m011_matches_the_published_slope() {
    let (tri, a) = fixture("m011");
    let out = beta_invariant(&tri, &a, &PvQuadratureConfig::for_dim(2)).unwrap();
    assert!(out.defined);
    assert!((out.value - 1.166578).abs() < 5e-3, "beta {}", out.value);
}

#[test]
fn principal_value_is_gauge_invariant() {
    // translating the contour by a row of the deformation lattice moves
    // every affine form but not the principal value
    let (tri, a) = fixture("4_1");
    let taut = enumerate_taut_in_component(&tri, &a).unwrap();
    let cfg = PvQuadratureConfig::for_dim(1);
    let base = mb_integral(&build_integrand(&tri, &taut[0], &a).unwrap(), &cfg).unwrap();
    for c in [0.05, -0.08] {
        let shifted = AngleAssignment {
            a: (0..a.a.len())
                .map(|q| a.a[q] + c * tri.lstar[0][q] as f64)
                .collect(),
        };
        let moved =
            mb_integral(&build_integrand(&tri, &taut[0], &shifted).unwrap(), &cfg).unwrap();
        let slack = 2.0 * base.spread.max(moved.spread);
        assert!(
            (moved.value - base.value).abs() < slack.max(1e-4),
            "c={c}: {} vs {}",
            moved.value,
            base.value
        );
    }
}

#[test]
fn principal_value_ignores_deformation_orientation() {
    let (tri, a) = fixture("5_2");
    let taut = enumerate_taut_in_component(&tri, &a).unwrap();
    let mut flipped = tri.clone();
    for row in flipped.lstar.iter_mut() {
        for v in row.iter_mut() {
            *v = -*v;
        }
    }
    let cfg = PvQuadratureConfig::for_dim(2);
    let x = mb_integral(&build_integrand(&tri, &taut[2], &a).unwrap(), &cfg).unwrap();
    let y = mb_integral(&build_integrand(&flipped, &taut[2], &a).unwrap(), &cfg).unwrap();
    assert!((x.value - y.value).abs() < 1e-10);
}

#[test]
fn beta_weight_expands_to_the_euler_beta_function() {
    // c_q G_q(-q^A) G_q(q^{A'}) G_q(q^{A''}) = kappa B(A', A'') (1 + O(1/kappa^2))
    let a = Complex::new(0.35, 0.1);
    let ap = Complex::new(0.25, -0.04);
    let app = Complex::new(1.0, 0.0) - a - ap;
    let f = |kappa: f64| -> Complex {
        let qp = QParam::new(Complex::new(-1.0 / kappa, 0.0)).unwrap();
        let e = |z: Complex| (z * qp.hbar).exp();
        c_q(&qp).unwrap()
            * g_q(-e(a), &qp).unwrap()
            * g_q(e(ap), &qp).unwrap()
            * g_q(e(app), &qp).unwrap()
    };
    let b = euler_beta(ap, app).unwrap();
    let resid = |kappa: f64| (f(kappa) / (kappa * b) - Complex::new(1.0, 0.0)).norm();
    let (r1, r2, r4) = (resid(50.0), resid(100.0), resid(200.0));
    assert!(r1 < 1e-2);
    // kappa-doubling shrinks the residual by ~4: quadratic decay
    assert!((r1 / r2 / 4.0 - 1.0).abs() < 0.25, "ratio {}", r1 / r2);
    assert!((r2 / r4 / 4.0 - 1.0).abs() < 0.25, "ratio {}", r2 / r4);
}

#[test]
fn invalid_contours_and_taut_structures_are_rejected() {
    let (tri, a) = fixture("4_1");
    let taut = enumerate_taut_in_component(&tri, &a).unwrap();
    let bad = AngleAssignment {
        a: a.a.iter().map(|v| v + 1.0).collect(),
    };
    assert!(matches!(
        build_integrand(&tri, &taut[0], &bad),
        Err(MbError::InvalidContour(_))
    ));
    let mut all_plus = taut[0].clone();
    for s in all_plus.signs.iter_mut() {
        *s = 1;
    }
    assert!(matches!(
        build_integrand(&tri, &all_plus, &a),
        Err(MbError::Constraint(_))
    ));
}

#[test]
fn log_value_agrees_with_direct_gamma_ratio() {
    let (tri, a) = fixture("5_2");
    let taut = enumerate_taut_in_component(&tri, &a).unwrap();
    let ig = build_integrand(&tri, &taut[0], &a).unwrap();
    let x = [0.4, -1.1];
    let mut direct = Complex::new(0.0, 0.0);
    for [p, q] in &ig.pairs {
        let z1 = Complex::new(p.a, -(p.l[0] as f64 * x[0] + p.l[1] as f64 * x[1]));
        let z2 = Complex::new(q.a, -(q.l[0] as f64 * x[0] + q.l[1] as f64 * x[1]));
        direct += log_gamma(z1).unwrap() + log_gamma(z2).unwrap() - log_gamma(z1 + z2).unwrap();
    }
    assert!((ig.log_value(&x).unwrap() - direct).norm() < 1e-13);
}
