//! Numerical checks of the pentagon identities behind the invariance of the
//! beta invariant under 2-3 moves.

use special_functions::{euler_beta, log_gamma, Complex};

use crate::quad::scaled_rule;
use crate::MbError;

fn require_positive(z: Complex) -> Result<(), MbError> {
    if z.re <= 0.0 {
        return Err(MbError::InvalidContour(z.re));
    }
    Ok(())
}

/// Integrate f over the full real line: Gauss-Legendre on [-r, r] plus both
/// tails mapped by u = 1/x, which is exact quadrature territory whenever
/// x^2 f(x) tends to a constant (or to zero).
fn line_integral<F: Fn(f64) -> Complex>(f: F, r: f64, n: usize, n_tail: usize) -> Complex {
    let (nodes, weights) = scaled_rule(n, -r, r);
    let mut total = Complex::new(0.0, 0.0);
    for (x, w) in nodes.iter().zip(&weights) {
        total += *w * f(*x);
    }
    let (unodes, uweights) = scaled_rule(n_tail, 0.0, 1.0 / r);
    for (u, w) in unodes.iter().zip(&uweights) {
        total += *w / (u * u) * (f(1.0 / u) + f(-1.0 / u));
    }
    total
}

fn log_beta_sum(pairs: &[(Complex, Complex)]) -> Complex {
    let mut total = Complex::new(0.0, 0.0);
    for &(z1, z2) in pairs {
        total += log_gamma(z1).unwrap() + log_gamma(z2).unwrap() - log_gamma(z1 + z2).unwrap();
    }
    total
}

/// Residual of the Barnes-type integral identity
/// (1/2 pi i) int B(A1+s, B1-s) B(A2+s, B2-s) B(A3+s, A1+A2+B1+B2) ds
///   = B(A2+B1, A3+B2) B(A1+B2, A3+B1).
pub fn barnes_pentagon_check(
    a1: Complex,
    a2: Complex,
    a3: Complex,
    b1: Complex,
    b2: Complex,
) -> Result<f64, MbError> {
    for z in [a1, a2, a3, b1, b2] {
        require_positive(z)?;
    }
    let c = a1 + a2 + b1 + b2;
    let f = |x: f64| -> Complex {
        let s = Complex::new(0.0, x);
        log_beta_sum(&[(a1 + s, b1 - s), (a2 + s, b2 - s), (a3 + s, c)]).exp()
    };
    // two of the betas pair opposite-sign contour arguments, so the
    // integrand decays like exp(-2 pi |x|); modest radii suffice
    let lhs = line_integral(f, 24.0, 2400, 64) / (2.0 * std::f64::consts::PI);
    let rhs = euler_beta(a2 + b1, a3 + b2)? * euler_beta(a1 + b2, a3 + b1)?;
    Ok((lhs - rhs).norm())
}

/// Residual of the bifurcated pentagon identity
/// Gamma(1-A1-B1) (I1 + I2) = RHS, for parameters with positive real parts
/// summing to 1. I1 and I2 are the one-variable principal-value integrals
/// of gamma ratios arising from the adjacent 2-3 move.
pub fn bifurcated_pentagon_check(a: [Complex; 3], b: [Complex; 3]) -> Result<f64, MbError> {
    bifurcated_pentagon_check_with(a, b, 15.0, 2400, 96)
}

/// Same check with explicit quadrature resolution (main radius, main node
/// count, tail node count).
pub fn bifurcated_pentagon_check_with(
    a: [Complex; 3],
    b: [Complex; 3],
    r: f64,
    n: usize,
    n_tail: usize,
) -> Result<f64, MbError> {
    let sum: Complex = a.iter().chain(b.iter()).sum();
    if (sum - Complex::new(1.0, 0.0)).norm() > 1e-12 {
        return Err(MbError::Constraint(format!(
            "parameters must sum to 1, got {sum}"
        )));
    }
    for z in a.iter().chain(b.iter()) {
        require_positive(*z)?;
    }
    let one = Complex::new(1.0, 0.0);
    let ratio = |num: [Complex; 3], den: [Complex; 3]| -> Complex {
        (log_gamma(num[0]).unwrap() + log_gamma(num[1]).unwrap() + log_gamma(num[2]).unwrap()
            - log_gamma(den[0]).unwrap()
            - log_gamma(den[1]).unwrap()
            - log_gamma(den[2]).unwrap())
        .exp()
    };
    let f1 = |x: f64| -> Complex {
        let s = Complex::new(0.0, x);
        ratio(
            [a[0] + s, b[1] - s, b[2] - s],
            [one - b[0] + s, one - a[1] - s, one - a[2] - s],
        )
    };
    let f2 = |x: f64| -> Complex {
        let s = Complex::new(0.0, x);
        ratio(
            [b[0] - s, a[1] + s, a[2] + s],
            [one - a[0] - s, one - b[1] + s, one - b[2] + s],
        )
    };
    // x^2 f(x) tends to a constant, so the 1/x tail substitution converges
    let tau = 2.0 * std::f64::consts::PI;
    let i1 = line_integral(f1, r, n, n_tail) / tau;
    let i2 = line_integral(f2, r, n, n_tail) / tau;
    let lhs = log_gamma(one - a[0] - b[0]).unwrap().exp() * (i1 + i2);
    let rhs = (log_gamma(a[0] + b[1]).unwrap()
        + log_gamma(a[0] + b[2]).unwrap()
        + log_gamma(a[1] + b[0]).unwrap()
        + log_gamma(a[2] + b[0]).unwrap()
        - log_gamma(one - a[1] - b[1]).unwrap()
        - log_gamma(one - a[1] - b[2]).unwrap()
        - log_gamma(one - a[2] - b[1]).unwrap()
        - log_gamma(one - a[2] - b[2]).unwrap())
    .exp();
    Ok((lhs - rhs).norm())
}
