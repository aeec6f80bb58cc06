//! On-disk form of the asymptotic term list.

use asym_compare::{AsymptoticTerm, TermKind};
use serde::{Deserialize, Serialize};

/// One serialized term: linear terms carry a slope, oscillatory terms the
/// sqrt(kappa) amplitude, the volume (frequency), and the phase integer n.
#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum TermSpec {
    Linear {
        slope: f64,
        #[serde(default)]
        label: String,
    },
    Oscillatory {
        amplitude: f64,
        volume: f64,
        n: i64,
        #[serde(default)]
        label: String,
    },
}

impl TermSpec {
    pub fn into_term(self) -> AsymptoticTerm {
        match self {
            TermSpec::Linear { slope, label } => AsymptoticTerm::linear(slope, label),
            TermSpec::Oscillatory {
                amplitude,
                volume,
                n,
                label,
            } => AsymptoticTerm {
                kind: TermKind::Oscillatory {
                    amplitude,
                    frequency: volume,
                    phase: std::f64::consts::FRAC_PI_4 * n as f64,
                },
                label,
            },
        }
    }

    pub fn from_term(term: &AsymptoticTerm) -> Self {
        match term.kind {
            TermKind::Linear { slope } => TermSpec::Linear {
                slope,
                label: term.label.clone(),
            },
            TermKind::Oscillatory {
                amplitude,
                frequency,
                phase,
            } => TermSpec::Oscillatory {
                amplitude,
                volume: frequency,
                n: (phase / std::f64::consts::FRAC_PI_4).round() as i64,
                label: term.label.clone(),
            },
        }
    }
}
