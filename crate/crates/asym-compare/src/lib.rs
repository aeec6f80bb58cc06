//! Asymptotic prediction of the meromorphic 3D-index at small real hbar and
//! its comparison against direct evaluation of the state integral.
//!
//! The prediction is a sum of a linear term (slope given by the beta
//! invariant) and one oscillatory term per contributing flat connection,
//! with amplitude sqrt(8 pi) tau, frequency the volume, and phase pi n / 4.

use special_functions::{Complex, QParam, SfError};
use state_integral::{integrate, IndexError};
use thiserror::Error;
use trimesh_io::{AngleAssignment, TriangulationData};

#[derive(Debug, Error)]
pub enum AsymError {
    #[error("kappa must be positive, got {0}")]
    NonpositiveKappa(f64),
    #[error("{0}")]
    Index(#[from] IndexError),
    #[error("{0}")]
    Sf(#[from] SfError),
}

/// Shape of one term of the asymptotic expansion at hbar = -1/kappa.
#[derive(Debug, Clone, PartialEq)]
pub enum TermKind {
    /// Growth linear in kappa; the slope is the beta invariant of the
    /// triangulation.
    Linear { slope: f64 },
    /// sqrt(kappa)-modulated oscillation contributed by one conjugate pair
    /// of flat connections.
    Oscillatory {
        /// Coefficient of sqrt(kappa): sqrt(8 pi) times the tau invariant.
        amplitude: f64,
        /// Angular frequency in kappa: the volume of the connection.
        frequency: f64,
        /// Phase offset: pi/4 times the combined integer of the connection.
        phase: f64,
    },
}

/// One term of the expansion plus a label recording where it came from
/// (which connection or taut-structure sum produced it).
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticTerm {
    pub kind: TermKind,
    pub label: String,
}

impl AsymptoticTerm {
    pub fn linear(slope: f64, label: impl Into<String>) -> Self {
        AsymptoticTerm {
            kind: TermKind::Linear { slope },
            label: label.into(),
        }
    }

    /// Oscillatory term assembled from the invariants of a connection:
    /// tau, its volume, and the combined sign-plus-signature integer.
    pub fn from_connection(
        tau: f64,
        volume: f64,
        n_combined: i64,
        label: impl Into<String>,
    ) -> Self {
        AsymptoticTerm {
            kind: TermKind::Oscillatory {
                amplitude: (8.0 * std::f64::consts::PI).sqrt() * tau,
                frequency: volume,
                phase: std::f64::consts::FRAC_PI_4 * n_combined as f64,
            },
            label: label.into(),
        }
    }

    fn eval(&self, kappa: f64) -> f64 {
        match self.kind {
            TermKind::Linear { slope } => slope * kappa,
            TermKind::Oscillatory {
                amplitude,
                frequency,
                phase,
            } => amplitude * kappa.sqrt() * (kappa * frequency + phase).cos(),
        }
    }
}

/// Predicted index value at hbar = -1/kappa, scaled by the degree d_t of
/// the cusp torus covering. Linear in the term list.
pub fn predict(terms: &[AsymptoticTerm], d_t: f64, kappa: f64) -> Result<f64, AsymError> {
    if kappa <= 0.0 {
        return Err(AsymError::NonpositiveKappa(kappa));
    }
    Ok(d_t * terms.iter().map(|t| t.eval(kappa)).sum::<f64>())
}

/// One grid point of the prediction-versus-quadrature comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub kappa: f64,
    /// Real part of the directly integrated index at hbar = -1/kappa.
    pub index_value: f64,
    pub prediction: f64,
    /// Always index_value - prediction.
    pub residual: f64,
}

/// Evaluate the state integral at hbar = -1/kappa for every kappa on the
/// grid and tabulate it against the prediction. Grid points are independent
/// and run in parallel; rows come back in grid order either way.
pub fn compare(
    tri: &TriangulationData,
    a: &AngleAssignment,
    terms: &[AsymptoticTerm],
    d_t: f64,
    kappa_grid: &[f64],
    samples: usize,
) -> Result<Vec<ComparisonRow>, AsymError> {
    let row = |&kappa: &f64| -> Result<ComparisonRow, AsymError> {
        if kappa <= 0.0 {
            return Err(AsymError::NonpositiveKappa(kappa));
        }
        let qp = QParam::new(Complex::new(-1.0 / kappa, 0.0))?;
        let index_value = integrate(tri, a, &qp, samples)?.value.re;
        let prediction = predict(terms, d_t, kappa)?;
        Ok(ComparisonRow {
            kappa,
            index_value,
            prediction,
            residual: index_value - prediction,
        })
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        kappa_grid.par_iter().map(row).collect()
    }
    #[cfg(not(feature = "parallel"))]
    kappa_grid.iter().map(row).collect()
}

/// Render rows as CSV. The header line is always present, even for an
/// empty grid; floats carry 17 significant digits so the table round-trips.
pub fn to_csv(rows: &[ComparisonRow]) -> String {
    let mut out = String::from("kappa,index,prediction,residual\n");
    for r in rows {
        out.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e}\n",
            r.kappa, r.index_value, r.prediction, r.residual
        ));
    }
    out
}

/// Evenly spaced kappa grid [min, max] with the given step, inclusive of
/// the endpoint up to roundoff slack.
pub fn kappa_grid(min: f64, max: f64, step: f64) -> Vec<f64> {
    assert!(step > 0.0);
    if max < min {
        return Vec::new();
    }
    let count = (((max - min) / step) * (1.0 + 1e-12) + 1e-9).floor() as usize;
    (0..=count).map(|i| min + i as f64 * step).collect()
}
