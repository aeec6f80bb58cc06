//! Pentagon identity residuals: closed-form right-hand sides against the
//! contour quadrature, at the symmetric point and on random tuples.

use mellin_barnes::{barnes_pentagon_check, bifurcated_pentagon_check, MbError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use special_functions::Complex;

#[test]
fn barnes_symmetric_point() {
    let half = Complex::new(0.5, 0.0);
    let r = barnes_pentagon_check(half, half, half, half, half).unwrap();
    assert!(r < 1e-8, "residual {r:.3e}");
}

#[test]
fn bifurcated_symmetric_point() {
    let sixth = Complex::new(1.0 / 6.0, 0.0);
    let r = bifurcated_pentagon_check([sixth; 3], [sixth; 3]).unwrap();
    assert!(r < 1e-7, "residual {r:.3e}");
}

#[test]
fn barnes_random_tuples() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for case in 0..20 {
        // real parts bounded away from 0 keep contour poles resolvable
        let w: Vec<Complex> = (0..5)
            .map(|_| Complex::new(rng.gen_range(0.15..0.9), rng.gen_range(-0.3..0.3)))
            .collect();
        let r = barnes_pentagon_check(w[0], w[1], w[2], w[3], w[4]).unwrap();
        assert!(r < 1e-6, "case {case}: residual {r:.3e} for {w:?}");
    }
}

#[test]
fn bifurcated_random_tuples() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for case in 0..20 {
        let mut v: Vec<Complex> = (0..6)
            .map(|_| Complex::new(rng.gen_range(0.7..1.3), rng.gen_range(-0.15..0.15)))
            .collect();
        let sum: Complex = v.iter().sum();
        for z in v.iter_mut() {
            z.re /= sum.re;
            z.im -= sum.im / 6.0;
        }
        let r = bifurcated_pentagon_check([v[0], v[1], v[2]], [v[3], v[4], v[5]]).unwrap();
        assert!(r < 1e-6, "case {case}: residual {r:.3e} for {v:?}");
    }
}

#[test]
fn bifurcated_rejects_parameters_not_summing_to_one() {
    let z = Complex::new(0.2, 0.0);
    let err = bifurcated_pentagon_check([z; 3], [z; 3]).unwrap_err();
    assert!(matches!(err, MbError::Constraint(_)));
}

#[test]
fn nonpositive_real_parts_are_rejected() {
    let good = Complex::new(0.3, 0.0);
    let bad = Complex::new(-0.1, 0.0);
    assert!(matches!(
        barnes_pentagon_check(bad, good, good, good, good),
        Err(MbError::InvalidContour(_))
    ));
    // keep the sum at 1 so only the positivity check can fire
    let patch = Complex::new(1.0 - 0.3 * 4.0 + 0.1, 0.0);
    assert!(matches!(
        bifurcated_pentagon_check([bad, good, good], [good, good, patch]),
        Err(MbError::InvalidContour(_))
    ));
}
