//! Functional equations and closed-form spot checks.

use std::f64::consts::PI;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use special_functions::{
    bernoulli_poly, dilog_unit, euler_beta, g_q, lobachevsky, polylog_nonpos, qdilog,
    qpochhammer, Complex, QParam,
};

fn annulus(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Complex {
    let r = rng.gen_range(lo..hi);
    let th = rng.gen_range(0.0..2.0 * PI);
    Complex::from_polar(r, th)
}

#[test]
fn gq_reciprocal_product_is_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for i in 0..1000 {
        let q = annulus(&mut rng, 0.1, 0.9);
        let z = annulus(&mut rng, 0.1, 0.9);
        let qp = QParam::new(q.ln()).unwrap();
        let p = g_q(z, &qp).unwrap() * g_q(-qp.q / z, &qp).unwrap();
        assert!(
            (p - 1.0).norm() <= 1e-12,
            "sample {i}: G_q(z) G_q(-q/z) = {p}"
        );
    }
}

#[test]
fn qdilog_exponentiates_to_pochhammer() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for i in 0..1000 {
        let q = annulus(&mut rng, 0.1, 0.9);
        let z = annulus(&mut rng, 0.1, 0.9);
        let qp = QParam::new(q.ln()).unwrap();
        let lhs = (-qdilog(z, &qp).unwrap()).exp();
        let rhs = qpochhammer(z, &qp);
        assert!(
            (lhs - rhs).norm() <= 1e-12,
            "sample {i}: exp(-Li2) = {lhs}, (z;q) = {rhs}"
        );
    }
}

#[test]
fn pochhammer_functional_equation() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..200 {
        let q = annulus(&mut rng, 0.1, 0.9);
        let z = annulus(&mut rng, 0.1, 0.95);
        let qp = QParam::new(q.ln()).unwrap();
        let lhs = qpochhammer(z, &qp);
        let rhs = (Complex::new(1.0, 0.0) - z) * qpochhammer(z * qp.q, &qp);
        assert!((lhs - rhs).norm() <= 1e-13 * (1.0 + lhs.norm()));
    }
}

#[test]
fn pochhammer_at_zero_is_one() {
    let qp = QParam::real(-0.3).unwrap();
    assert_eq!(qpochhammer(Complex::new(0.0, 0.0), &qp), Complex::new(1.0, 0.0));
    assert_eq!(qdilog(Complex::new(0.0, 0.0), &qp).unwrap().norm(), 0.0);
}

#[test]
fn beta_closed_forms() {
    let one = Complex::new(1.0, 0.0);
    let half = Complex::new(0.5, 0.0);
    assert!((euler_beta(one, one).unwrap() - 1.0).norm() < 1e-14);
    assert!((euler_beta(half, half).unwrap() - PI).norm() < 1e-13);
}

#[test]
fn polylog_closed_forms() {
    let m1 = Complex::new(-1.0, 0.0);
    assert!((polylog_nonpos(0, m1).unwrap() + 0.5).norm() < 1e-15);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..100 {
        let z = annulus(&mut rng, 0.1, 2.0);
        let want = z / ((Complex::new(1.0, 0.0) - z) * (Complex::new(1.0, 0.0) - z));
        assert!((polylog_nonpos(-1, z).unwrap() - want).norm() <= 1e-12 * (1.0 + want.norm()));
    }
}

#[test]
fn lobachevsky_closed_forms() {
    assert_eq!(lobachevsky(0.0), 0.0);
    // 6 L(pi/3) is the volume of the figure-eight knot complement
    assert!((6.0 * lobachevsky(PI / 3.0) - 2.0298832128193).abs() < 1e-12);
}

#[test]
fn dilog_unit_real_part_at_one() {
    // Li2(1) = pi^2/6
    let v = dilog_unit(0.0);
    assert!((v.re - PI * PI / 6.0).abs() < 1e-14 && v.im == 0.0);
}

proptest! {
    #[test]
    fn bernoulli_reflection(k in 0usize..12, re in -3.0f64..3.0, im in -3.0f64..3.0) {
        let a = Complex::new(re, im);
        let lhs = bernoulli_poly(k, Complex::new(1.0, 0.0) - a);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let rhs = sign * bernoulli_poly(k, a);
        prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + rhs.norm()));
    }

    #[test]
    fn bernoulli_low_degrees(re in -3.0f64..3.0, im in -3.0f64..3.0) {
        let a = Complex::new(re, im);
        prop_assert_eq!(bernoulli_poly(0, a), Complex::new(1.0, 0.0));
        let b2 = a * a - a + 1.0 / 6.0;
        prop_assert!((bernoulli_poly(2, a) - b2).norm() <= 1e-14 * (1.0 + b2.norm()));
    }

    #[test]
    fn polylog_duplication(r in 0.1f64..1.8, th in 0.0f64..6.28) {
        let z = Complex::from_polar(r, th);
        if (z - 1.0).norm() > 1e-3 && (z + 1.0).norm() > 1e-3 && (z * z - 1.0).norm() > 1e-3 {
            let lhs = polylog_nonpos(-2, z).unwrap() + polylog_nonpos(-2, -z).unwrap();
            let rhs = 8.0 * polylog_nonpos(-2, z * z).unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
        }
    }

    #[test]
    fn lobachevsky_periodic_and_odd(th in -10.0f64..10.0) {
        prop_assert!((lobachevsky(th + PI) - lobachevsky(th)).abs() <= 1e-13);
        prop_assert!((lobachevsky(-th) + lobachevsky(th)).abs() <= 1e-13);
    }

    #[test]
    fn lobachevsky_doubling(th in -3.0f64..3.0) {
        let lhs = lobachevsky(2.0 * th);
        let rhs = 2.0 * lobachevsky(th) + 2.0 * lobachevsky(th + PI / 2.0);
        prop_assert!((lhs - rhs).abs() <= 1e-13);
    }

    #[test]
    fn beta_conjugation_symmetry(xr in 0.1f64..4.0, xi in -5.0f64..5.0,
                                 yr in 0.1f64..4.0, yi in -5.0f64..5.0) {
        let x = Complex::new(xr, xi);
        let y = Complex::new(yr, yi);
        let a = euler_beta(x.conj(), y.conj()).unwrap();
        let b = euler_beta(x, y).unwrap().conj();
        prop_assert!((a - b).norm() <= 1e-13 * (1.0 + b.norm()));
    }
}
