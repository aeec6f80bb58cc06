//! Principal-value Mellin-Barnes integrals over beta Boltzmann weights,
//! their sum over taut structures (the beta invariant), and the pentagon
//! identities underlying its triangulation independence.

use angle_spaces::{enumerate_taut_in_component, AngleError, TautStructure};
use special_functions::{log_gamma, Complex, SfError};
use thiserror::Error;
use trimesh_io::{AngleAssignment, TriError, TriangulationData};

mod pentagon;
pub mod quad;

pub use pentagon::{
    barnes_pentagon_check, bifurcated_pentagon_check, bifurcated_pentagon_check_with,
};
pub use quad::gauss_legendre;

#[derive(Debug, Error)]
pub enum MbError {
    #[error("contour argument has nonpositive real part: {0}")]
    InvalidContour(f64),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("{0}")]
    Sf(#[from] SfError),
    #[error("{0}")]
    Angle(#[from] AngleError),
    #[error("{0}")]
    Tri(#[from] TriError),
}

/// One affine contour argument: `a - i sum_m x_m l_m` on the line s = ix.
#[derive(Debug, Clone)]
pub struct AffineForm {
    /// Real part, in units of pi (strict angle / pi, in (0, 1)).
    pub a: f64,
    /// Deformation coefficients, one per integration variable.
    pub l: Vec<i64>,
}

impl AffineForm {
    fn at(&self, x: &[f64]) -> Complex {
        let shift: f64 = self.l.iter().zip(x).map(|(&c, &xi)| c as f64 * xi).sum();
        Complex::new(self.a, -shift)
    }
}

/// Product of beta Boltzmann weights: per tetrahedron the two arguments of
/// the Euler beta function, as affine forms in the N-1 contour variables.
#[derive(Debug, Clone)]
pub struct MbIntegrand {
    pub pairs: Vec<[AffineForm; 2]>,
    pub dim: usize,
}

impl MbIntegrand {
    /// log of the integrand at contour point ix (x real).
    pub fn log_value(&self, x: &[f64]) -> Result<Complex, MbError> {
        let mut total = Complex::new(0.0, 0.0);
        for [p, q] in &self.pairs {
            let z1 = p.at(x);
            let z2 = q.at(x);
            total += log_gamma(z1)? + log_gamma(z2)? - log_gamma(z1 + z2)?;
        }
        Ok(total)
    }

    pub fn value(&self, x: &[f64]) -> Result<Complex, MbError> {
        Ok(self.log_value(x)?.exp())
    }
}

/// Assemble the integrand of a taut structure: per tetrahedron, the beta
/// weight is taken over the two quads carrying the sign +1.
pub fn build_integrand(
    tri: &TriangulationData,
    taut: &TautStructure,
    a: &AngleAssignment,
) -> Result<MbIntegrand, MbError> {
    let n = tri.n;
    assert_eq!(taut.signs.len(), 3 * n);
    assert_eq!(a.a.len(), 3 * n);
    let dim = tri.lstar.len();
    let mut pairs = Vec::with_capacity(n);
    for t in 0..n {
        let quads: Vec<usize> = (0..3)
            .map(|j| j * n + t)
            .filter(|&q| taut.signs[q] == 1)
            .collect();
        if quads.len() != 2 {
            return Err(MbError::Constraint(format!(
                "tetrahedron {t} does not carry exactly one -1 sign"
            )));
        }
        let form = |q: usize| -> Result<AffineForm, MbError> {
            if a.a[q] <= 0.0 || a.a[q] >= 1.0 {
                return Err(MbError::InvalidContour(a.a[q]));
            }
            Ok(AffineForm {
                a: a.a[q],
                l: tri.lstar.iter().map(|row| row[q]).collect(),
            })
        };
        pairs.push([form(quads[0])?, form(quads[1])?]);
    }
    Ok(MbIntegrand { pairs, dim })
}

/// Principal-value scheme: tensor Gauss-Legendre inside Euclidean balls of
/// increasing radius, averaged over the last `window` radii to damp the
/// conditionally convergent oscillation.
#[derive(Debug, Clone)]
pub struct PvQuadratureConfig {
    /// Increasing radius schedule; at least `window` entries.
    pub radii: Vec<f64>,
    /// Per-axis node count at the largest radius; smaller balls use
    /// proportionally fewer nodes (equal node density).
    pub nodes_per_axis: usize,
    /// Averaging window over the tail of the schedule.
    pub window: usize,
    /// Spread across the window below which the result counts as converged.
    pub spread_tolerance: f64,
}

impl Default for PvQuadratureConfig {
    fn default() -> Self {
        PvQuadratureConfig {
            radii: vec![10.0, 15.0, 20.0, 25.0],
            nodes_per_axis: 3000,
            window: 3,
            spread_tolerance: 5e-3,
        }
    }
}

impl PvQuadratureConfig {
    /// Schedule for three-variable integrals, where the grid volume of the
    /// default ball sizes is unaffordable. Same node density per unit.
    pub fn compact() -> Self {
        PvQuadratureConfig {
            radii: vec![5.0, 6.5, 8.0, 9.5],
            nodes_per_axis: 620,
            window: 3,
            spread_tolerance: 5e-3,
        }
    }

    /// Pick the schedule matching the integrand's variable count.
    pub fn for_dim(dim: usize) -> Self {
        if dim >= 3 {
            PvQuadratureConfig::compact()
        } else {
            PvQuadratureConfig::default()
        }
    }
}

#[derive(Debug, Clone)]
pub struct MbOutcome {
    /// Smoothed Cesaro average over the trailing radius window.
    pub value: f64,
    /// Distance to the same average taken one radius step earlier; the
    /// convergence estimate of the principal value.
    pub spread: f64,
    pub converged: bool,
    /// One sharp ball value per scheduled radius.
    pub partials: Vec<f64>,
}

pub fn mb_integral(
    integrand: &MbIntegrand,
    cfg: &PvQuadratureConfig,
) -> Result<MbOutcome, MbError> {
    let j = cfg.radii.len();
    assert!(cfg.window >= 2 && j > cfg.window);
    assert!(cfg.radii.windows(2).all(|p| p[0] < p[1]));
    let dim = integrand.dim;
    let rmax = *cfg.radii.last().unwrap();
    // one argument with nonpositive real part poisons every node alike;
    // probe at the origin so the error surfaces before the grid walk
    integrand.value(&vec![0.0; dim])?;
    let f = |x: &[f64]| -> Complex {
        integrand
            .log_value(x)
            .map(|l| l.exp())
            .unwrap_or_else(|_| Complex::new(f64::NAN, f64::NAN))
    };
    // one pass over the largest ball serves every window: sharp balls for
    // the per-radius diagnostics, two smooth tapers whose difference
    // estimates the residual oscillation of the principal value
    let mut windows: Vec<quad::RadialWindow> =
        cfg.radii.iter().map(|&r| quad::RadialWindow::Ball(r)).collect();
    windows.push(quad::RadialWindow::Taper(cfg.radii[j - cfg.window], rmax));
    windows.push(quad::RadialWindow::Taper(
        cfg.radii[j - cfg.window - 1],
        cfg.radii[j - 1],
    ));
    let n = cfg.nodes_per_axis.max(32);
    let n = n + n % 2; // even: no node sits on the symmetry hyperplane
    let (nodes, weights) = quad::scaled_rule(n, -rmax, rmax);
    let sums = quad::half_space_sums(&f, &nodes, &weights, &windows, dim);
    // conjugation symmetry of the contour: full-space values are real
    let norm = 2.0 * (2.0 * std::f64::consts::PI).powi(-(dim as i32));
    let partials: Vec<f64> = sums[..j].iter().map(|s| norm * s.re).collect();
    let value = norm * sums[j].re;
    let spread = (value - norm * sums[j + 1].re).abs();
    if !value.is_finite() {
        return Err(MbError::Constraint("non-finite quadrature value".into()));
    }
    Ok(MbOutcome {
        value,
        spread,
        converged: spread < cfg.spread_tolerance,
        partials,
    })
}

#[derive(Debug, Clone)]
pub struct BetaOutcome {
    /// Sum over taut structures; meaningful only when `defined`.
    pub value: f64,
    /// False when any summand failed its convergence diagnostic.
    pub defined: bool,
    pub summands: Vec<MbOutcome>,
    pub taut: Vec<TautStructure>,
}

/// The beta invariant: sum of the Mellin-Barnes integrals over all taut
/// structures in the component of `exp(i pi a)`.
pub fn beta_invariant(
    tri: &TriangulationData,
    a: &AngleAssignment,
    cfg: &PvQuadratureConfig,
) -> Result<BetaOutcome, MbError> {
    let taut = enumerate_taut_in_component(tri, a)?;
    let mut summands = Vec::with_capacity(taut.len());
    let mut value = 0.0;
    let mut defined = true;
    for t in &taut {
        let outcome = mb_integral(&build_integrand(tri, t, a)?, cfg)?;
        value += outcome.value;
        defined &= outcome.converged;
        summands.push(outcome);
    }
    Ok(BetaOutcome {
        value,
        defined,
        summands,
        taut,
    })
}
