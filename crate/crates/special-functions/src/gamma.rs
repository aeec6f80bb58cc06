use crate::{Complex, SfError};

// Lanczos approximation, g = 607/128, 15 terms (Godfrey's coefficients);
// relative accuracy around 1e-15 on the right half-plane.
const G: f64 = 607.0 / 128.0;
const COEF: [f64; 15] = [
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
];

/// Principal branch of log Gamma on the right half-plane.
pub fn log_gamma(z: Complex) -> Result<Complex, SfError> {
    if z.re <= 0.0 {
        return Err(SfError::Domain(format!(
            "log_gamma requires Re z > 0, got {z}"
        )));
    }
    let mut s = Complex::new(COEF[0], 0.0);
    for (i, &c) in COEF.iter().enumerate().skip(1) {
        s += c / (z + (i as f64 - 1.0));
    }
    let t = z + (G - 0.5);
    let half_log_2pi = 0.5 * (2.0 * std::f64::consts::PI).ln();
    Ok(half_log_2pi + (z - 0.5) * t.ln() - t + s.ln())
}

/// log B(x, y) = log Gamma(x) + log Gamma(y) - log Gamma(x + y).
pub fn log_beta(x: Complex, y: Complex) -> Result<Complex, SfError> {
    Ok(log_gamma(x)? + log_gamma(y)? - log_gamma(x + y)?)
}

/// Euler beta function on the holomorphic region Re x, Re y > 0.
pub fn euler_beta(x: Complex, y: Complex) -> Result<Complex, SfError> {
    Ok(log_beta(x, y)?.exp())
}
