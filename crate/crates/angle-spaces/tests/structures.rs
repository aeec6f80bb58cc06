//! omega_at, holonomy, volume, suppression.

use std::f64::consts::PI;

use angle_spaces::{
    angle_holonomy, classify_suppressing, component_membership, omega_at,
    volume, CircleAngleStructure,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use special_functions::{lobachevsky, Complex};
use trimesh_io::{load_triangulation, AngleAssignment, TriangulationData};

fn fixture(name: &str) -> (TriangulationData, AngleAssignment) {
    let path = format!(
        "{}/../../fixtures/{name}.json",
        env!("CARGO_MANIFEST_DIR")
    );
    let (tri, a) = load_triangulation(&path).unwrap();
    (tri, a)
}

#[test]
fn omega_at_zero_is_exp_of_assignment() {
    let (tri, a) = fixture("5_2");
    let om = omega_at(&tri, &a, &[0.0, 0.0]);
    om.validate(&tri).unwrap();
    for (w, al) in om.omega.iter().zip(a.radians()) {
        assert!((w - Complex::from_polar(1.0, al)).norm() < 1e-15);
    }
}

#[test]
fn figure_eight_taut_points_on_the_circle() {
    let (tri, a) = fixture("4_1");
    let om = omega_at(&tri, &a, &[PI / 3.0]);
    let want = [1.0, 1.0, -1.0, -1.0, 1.0, 1.0];
    for (w, want) in om.omega.iter().zip(want) {
        assert!((w - want).norm() < 1e-12, "got {w}, want {want}");
    }
    let om = omega_at(&tri, &a, &[-2.0 * PI / 3.0]);
    for w in &om.omega {
        assert!((w + 1.0).norm() < 1e-12, "got {w}, want -1");
    }
}

#[test]
fn holonomy_is_trivial_at_strict_structures() {
    for name in ["4_1", "5_2", "m011", "m032", "m053"] {
        let (tri, a) = fixture(name);
        let om = omega_at(&tri, &a, &vec![0.0; tri.n - 1]);
        om.validate(&tri).unwrap();
        let (hm, hl) = angle_holonomy(&tri, &om).unwrap();
        assert!((hm - 1.0).norm() < 1e-10, "{name}: mu holonomy {hm}");
        assert!((hl - 1.0).norm() < 1e-10, "{name}: lambda holonomy {hl}");
    }
}

#[test]
fn peripheral_deformation_shifts_holonomy_by_intersection_pairing() {
    // multiplying by exp(i s l_mu) leaves the mu holonomy alone and rotates
    // the lambda holonomy by twice the (mu, lambda) intersection angle; with
    // our row order the pairing sign comes out as -1
    let (tri, a) = fixture("4_1");
    let om0 = omega_at(&tri, &a, &[0.0]);
    let (m0, l0) = angle_holonomy(&tri, &om0).unwrap();
    let s = 0.3;
    let om1 = CircleAngleStructure {
        omega: om0
            .omega
            .iter()
            .zip(&tri.lp[0])
            .map(|(w, &g)| w * Complex::from_polar(1.0, s * g as f64))
            .collect(),
    };
    let (m1, l1) = angle_holonomy(&tri, &om1).unwrap();
    assert!((m1 - m0).norm() < 1e-12);
    let want = l0 * Complex::from_polar(1.0, -2.0 * s);
    assert!((l1 - want).norm() < 1e-12, "lambda holonomy {l1}, want {want}");
}

#[test]
fn volume_of_figure_eight() {
    let (tri, a) = fixture("4_1");
    let v = volume(&omega_at(&tri, &a, &[0.0]));
    assert!((v - 2.0298832128193).abs() < 1e-10, "vol {v}");
}

#[test]
fn volume_vanishes_on_taut_structures() {
    let (tri, a) = fixture("4_1");
    for t in [PI / 3.0, -2.0 * PI / 3.0] {
        let v = volume(&omega_at(&tri, &a, &[t]));
        assert!(v.abs() < 1e-12, "t={t}: vol {v}");
    }
}

#[test]
fn figure_eight_volume_family() {
    // along the one-parameter family the volume is 4 L(pi/6 + t)
    let (tri, a) = fixture("4_1");
    for i in 0..40 {
        let t = -PI + i as f64 * (2.0 * PI / 39.0);
        let v = volume(&omega_at(&tri, &a, &[t]));
        let want = 4.0 * lobachevsky(PI / 6.0 + t);
        assert!((v - want).abs() < 1e-12, "t={t}: {v} vs {want}");
    }
}

#[test]
fn volume_is_odd_under_conjugation() {
    let (tri, a) = fixture("m011");
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let t: Vec<f64> = (0..tri.n - 1).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let om = omega_at(&tri, &a, &t);
        let conj = CircleAngleStructure {
            omega: om.omega.iter().map(|w| w.conj()).collect(),
        };
        assert!((volume(&conj) + volume(&om)).abs() < 1e-11);
    }
}

#[test]
fn strict_structures_do_not_suppress() {
    let (tri, a) = fixture("m053");
    let om = omega_at(&tri, &a, &vec![0.0; tri.n - 1]);
    let rep = classify_suppressing(&tri, &om);
    assert!(rep.suppressing.iter().all(|s| !s));
    assert!(rep.defect.abs() < 1e-12);
}

#[test]
fn all_minus_one_structure_suppresses() {
    // each (-1,-1,-1) triple contributes 3 pi - pi of defect
    let (tri, a) = fixture("4_1");
    let om = omega_at(&tri, &a, &[-2.0 * PI / 3.0]);
    let rep = classify_suppressing(&tri, &om);
    assert!(rep.suppressing.iter().all(|s| *s));
    assert!((rep.defect - 4.0 * PI).abs() < 1e-10, "defect {}", rep.defect);
}

#[test]
fn mixed_triple_with_a_one_does_not_suppress() {
    let (tri, _) = fixture("4_1");
    let phi = 1.1;
    let triple = [
        Complex::new(1.0, 0.0),
        Complex::from_polar(1.0, phi),
        -Complex::from_polar(1.0, -phi),
    ];
    // duplicate over both tetrahedra so edge equations are not consulted
    let om = CircleAngleStructure {
        omega: vec![
            triple[0], triple[0], triple[1], triple[1], triple[2], triple[2],
        ],
    };
    let rep = classify_suppressing(&tri, &om);
    assert!(rep.suppressing.iter().all(|s| !s));
    assert!(rep.defect.abs() < 1e-12);
}

#[test]
fn suppression_defect_is_nonnegative() {
    let (tri, a) = fixture("5_2");
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..200 {
        let t: Vec<f64> = (0..tri.n - 1).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let rep = classify_suppressing(&tri, &omega_at(&tri, &a, &t));
        assert!(rep.defect >= -1e-12, "defect {}", rep.defect);
    }
}

#[test]
fn parametrized_points_stay_in_component() {
    for name in ["4_1", "m011"] {
        let (tri, a) = fixture(name);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let t: Vec<f64> =
                (0..tri.n - 1).map(|_| rng.gen_range(-3.0..3.0)).collect();
            let om = omega_at(&tri, &a, &t);
            assert!(component_membership(&tri, &om, &a).unwrap(), "{name} t={t:?}");
        }
    }
}
