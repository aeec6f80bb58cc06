use crate::{Complex, SfError};

/// Nome data: `q = exp(hbar)` with `Re hbar < 0`, so `0 < |q| < 1`.
#[derive(Debug, Clone, Copy)]
pub struct QParam {
    pub hbar: Complex,
    pub q: Complex,
}

impl QParam {
    pub fn new(hbar: Complex) -> Result<Self, SfError> {
        if hbar.re >= 0.0 {
            return Err(SfError::Domain(format!(
                "need Re hbar < 0, got {hbar}"
            )));
        }
        Ok(QParam { hbar, q: hbar.exp() })
    }

    pub fn real(hbar: f64) -> Result<Self, SfError> {
        Self::new(Complex::new(hbar, 0.0))
    }
}

const EPS: f64 = 1e-17;

/// q-Pochhammer symbol (z; q) = prod_{n>=0} (1 - q^n z). The product is cut
/// once |q^n z| < EPS * (1 - |q|), a deterministic function of the inputs.
pub fn qpochhammer(z: Complex, qp: &QParam) -> Complex {
    let q = qp.q;
    let qabs = q.norm();
    let cutoff = EPS * (1.0 - qabs);
    let mut prod = Complex::new(1.0, 0.0);
    let mut w = z; // q^n z
    while w.norm() >= cutoff {
        prod *= Complex::new(1.0, 0.0) - w;
        w *= q;
    }
    prod
}

/// q-dilogarithm Li2(z; q) = sum_{n>=1} z^n / (n (1 - q^n)) for |z| < 1.
pub fn qdilog(z: Complex, qp: &QParam) -> Result<Complex, SfError> {
    if z.norm() >= 1.0 {
        return Err(SfError::Domain(format!(
            "qdilog requires |z| < 1, got |z| = {}",
            z.norm()
        )));
    }
    let q = qp.q;
    let cutoff = EPS * (1.0 - q.norm());
    let mut sum = Complex::new(0.0, 0.0);
    let mut zn = z; // z^n
    let mut qn = q; // q^n
    let mut n = 1.0f64;
    loop {
        let term = zn / (n * (Complex::new(1.0, 0.0) - qn));
        sum += term;
        if term.norm() < cutoff {
            break;
        }
        zn *= z;
        qn *= q;
        n += 1.0;
    }
    Ok(sum)
}

/// Tetrahedral weight G_q(z) = (-q/z; q) / (z; q).
pub fn g_q(z: Complex, qp: &QParam) -> Result<Complex, SfError> {
    let den = qpochhammer(z, qp);
    if den.norm() == 0.0 {
        return Err(SfError::Pole(format!("(z; q) vanishes at z = {z}")));
    }
    Ok(qpochhammer(-qp.q / z, qp) / den)
}

/// Normalisation constant c_q = (q; q)^2 / (q^2; q^2).
pub fn c_q(qp: &QParam) -> Result<Complex, SfError> {
    let q2 = QParam::new(2.0 * qp.hbar)?;
    let num = qpochhammer(qp.q, qp);
    Ok(num * num / qpochhammer(q2.q, &q2))
}
