use std::f64::consts::PI;

use crate::bernoulli::{bernoulli_number, bernoulli_poly, factorial};
use crate::gamma::log_gamma;
use crate::lobachevsky::{dilog_unit, lobachevsky};
use crate::polylog::polylog_nonpos;
use crate::{Complex, SfError};

const LOG_2PI_HALF: f64 = 0.918_938_533_204_672_8; // log(2 pi) / 2

fn require_negative(hbar: f64) -> Result<(), SfError> {
    if hbar >= 0.0 {
        return Err(SfError::Domain(format!("need hbar < 0, got {hbar}")));
    }
    Ok(())
}

/// Truncated expansion of the normalisation constant c_q at q = e^hbar:
/// all power corrections vanish, so the order parameter is immaterial.
pub fn expansion_cq(hbar: f64) -> Result<f64, SfError> {
    require_negative(hbar)?;
    let ex = PI * PI / (4.0 * hbar) - 0.5 * (-hbar).ln() + 0.5 * (4.0 * PI).ln();
    Ok(ex.exp())
}

/// Truncated expansion of G_q(omega e^{a hbar}) with q = e^hbar, hbar < 0.
///
/// `order` is the highest power of hbar retained in the exponent. The three
/// branches (omega = 1, omega = -1, omega off the real axis) have different
/// shapes; the series for the real branches contains even powers only, so
/// there the first omitted power is the next even integer above `order`.
/// Unit-circle omega within 1e-6 of 1 but not equal to it is rejected: the
/// off-axis series is not uniform near 1.
pub fn expansion_gq(
    omega: Complex,
    a: Complex,
    hbar: f64,
    order: usize,
) -> Result<Complex, SfError> {
    require_negative(hbar)?;
    if (omega.norm() - 1.0).abs() > 1e-9 {
        return Err(SfError::Domain(format!(
            "omega must lie on the unit circle, got |omega| = {}",
            omega.norm()
        )));
    }
    let log_minus_h = (-hbar).ln();
    let ln2 = std::f64::consts::LN_2;
    let half = Complex::new(0.5, 0.0);

    if (omega - 1.0).norm() <= 1e-12 {
        if a.re <= 0.0 {
            return Err(SfError::Domain(format!(
                "gamma pole: need Re a > 0 on the omega = 1 branch, a = {a}"
            )));
        }
        let mut ex = Complex::new(-PI * PI / (4.0 * hbar), 0.0)
            + (a - half) * (log_minus_h + ln2)
            + log_gamma(a)?
            - LOG_2PI_HALF;
        let mut hpow = hbar * hbar;
        let mut k = 1usize;
        while 2 * k <= order {
            let c = bernoulli_number(2 * k) * 4f64.powi(k as i32)
                / (2.0 * k as f64 * factorial(2 * k + 1));
            ex += c * bernoulli_poly(2 * k + 1, a) * hpow;
            hpow *= hbar * hbar;
            k += 1;
        }
        return Ok(ex.exp());
    }

    if (omega + 1.0).norm() <= 1e-12 {
        if (1.0 - a.re) <= 0.0 {
            return Err(SfError::Domain(format!(
                "gamma pole: need Re a < 1 on the omega = -1 branch, a = {a}"
            )));
        }
        let mut ex = Complex::new(PI * PI / (4.0 * hbar), 0.0)
            + (a - half) * (log_minus_h + ln2)
            - log_gamma(Complex::new(1.0, 0.0) - a)?
            + LOG_2PI_HALF;
        let mut hpow = hbar * hbar;
        let mut k = 1usize;
        while 2 * k <= order {
            let c = bernoulli_number(2 * k) * 4f64.powi(k as i32)
                / (2.0 * k as f64 * factorial(2 * k + 1));
            ex += c * bernoulli_poly(2 * k + 1, a) * hpow;
            hpow *= hbar * hbar;
            k += 1;
        }
        return Ok(ex.exp());
    }

    if (omega - 1.0).norm() < 1e-6 {
        return Err(SfError::Domain(
            "omega within 1e-6 of 1: off-axis branch refused".into(),
        ));
    }

    let theta = omega.arg();
    let im = omega.im;
    let sgn = if im > 0.0 { 1.0 } else { -1.0 };
    let lead = Complex::new(
        0.5 * PI * theta.abs() - PI * PI / 4.0,
        -lobachevsky(theta),
    ) / hbar;
    let mut ex = lead
        + (a - half)
            * Complex::new((2.0 * im.abs()).ln(), -0.5 * PI * sgn);
    if order >= 1 {
        ex += bernoulli_poly(2, a) * omega.re / (2.0 * Complex::i() * im) * hbar;
    }
    let omega2 = omega * omega;
    let mut hpow = hbar * hbar;
    for k in 2..=order {
        let c = 2f64.powi(k as i32) / factorial(k + 1);
        ex -= c * bernoulli_poly(k + 1, a) * polylog_nonpos(1 - k as i64, omega2)? * hpow;
        hpow *= hbar;
    }
    Ok(ex.exp())
}

/// Truncated expansion of the q-dilogarithm Li2(omega e^{a hbar}; e^hbar).
/// Same order semantics as `expansion_gq`.
pub fn expansion_qdilog(
    omega: Complex,
    a: Complex,
    hbar: f64,
    order: usize,
) -> Result<Complex, SfError> {
    require_negative(hbar)?;
    let half = Complex::new(0.5, 0.0);
    if (omega - 1.0).norm() <= 1e-12 {
        let mut ex = Complex::new(-PI * PI / (6.0 * hbar), 0.0)
            + (a - half) * (-hbar).ln()
            + log_gamma(a)?
            - LOG_2PI_HALF
            + bernoulli_poly(2, a) * (hbar / 4.0);
        let mut hpow = hbar * hbar;
        let mut k = 1usize;
        while 2 * k <= order {
            let c = bernoulli_number(2 * k)
                / (2.0 * k as f64 * factorial(2 * k + 1));
            ex += c * bernoulli_poly(2 * k + 1, a) * hpow;
            hpow *= hbar * hbar;
            k += 1;
        }
        return Ok(ex);
    }
    if a.re <= 0.0 {
        return Err(SfError::Domain(format!(
            "need Re a > 0 for omega != 1, got a = {a}"
        )));
    }
    let mut ex = -dilog_unit(omega.arg()) / hbar
        + (a - half) * (Complex::new(1.0, 0.0) - omega).ln();
    let mut hpow = hbar;
    for k in 1..=order {
        let c = 1.0 / factorial(k + 1);
        ex -= c * bernoulli_poly(k + 1, a) * polylog_nonpos(1 - k as i64, omega)? * hpow;
        hpow *= hbar;
    }
    Ok(ex)
}
