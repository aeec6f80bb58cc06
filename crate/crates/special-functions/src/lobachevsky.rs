use std::f64::consts::PI;
use std::sync::OnceLock;

use crate::bernoulli::{bernoulli_number, factorial};
use crate::Complex;

// Coefficients of the classical series
//   Cl2(x) = x - x log|x| + sum_{n>=1} zeta(2n)/(n(2n+1)(2pi)^{2n}) x^{2n+1}
// valid for |x| <= pi after range reduction; the n-th coefficient reduced via
// zeta(2n) = (-1)^{n+1} B_{2n} (2pi)^{2n} / (2 (2n)!).
fn cl2_coefs() -> &'static [f64] {
    static C: OnceLock<Vec<f64>> = OnceLock::new();
    C.get_or_init(|| {
        (1..=26)
            .map(|n| {
                let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
                sign * bernoulli_number(2 * n)
                    / (2.0 * n as f64 * (2.0 * n as f64 + 1.0) * factorial(2 * n))
            })
            .collect()
    })
}

/// Clausen function Cl2 (the Fourier series sum sin(n x)/n^2), 2pi-periodic
/// and odd; absolute accuracy around 1e-15.
pub fn clausen(x: f64) -> f64 {
    // reduce to [-pi, pi]
    let mut t = x.rem_euclid(2.0 * PI);
    if t > PI {
        t -= 2.0 * PI;
    }
    if t == 0.0 {
        return 0.0;
    }
    let mut sum = t - t * t.abs().ln();
    let t2 = t * t;
    let mut pow = t * t2; // t^(2n+1)
    for &c in cl2_coefs() {
        let term = c * pow;
        sum += term;
        if term.abs() < 1e-17 * sum.abs().max(1e-3) {
            break;
        }
        pow *= t2;
    }
    sum
}

/// Lobachevsky function: pi-periodic, odd, vanishing at multiples of pi/2's
/// endpoints 0 and pi; equals Cl2(2 theta)/2.
pub fn lobachevsky(theta: f64) -> f64 {
    0.5 * clausen(2.0 * theta)
}

/// Dilogarithm on the unit circle: Li2(e^{i theta}) with theta reduced to
/// [0, 2pi).
pub fn dilog_unit(theta: f64) -> Complex {
    let a = theta.rem_euclid(2.0 * PI);
    let re = PI * PI / 6.0 - 0.5 * a * (PI - 0.5 * a);
    let im = 2.0 * lobachevsky(0.5 * a);
    Complex::new(re, im)
}
