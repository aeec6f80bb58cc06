//! Torsion-type invariant of a shaped triangulation, the 1-loop determinant,
//! and the stationary-phase contribution of a critical-point pair.

use std::f64::consts::PI;

use geometry_solver::{critical_report, ShapeSolution, SolveError};
use num_traits::ToPrimitive;
use special_functions::Complex;
use thiserror::Error;
use trimesh_io::{integer_kernel, solve_integer, TriError, TriangulationData};

mod lattice;

#[derive(Debug, Error)]
pub enum TauError {
    #[error("flat shape at quad {0}: invariant undefined on real shapes")]
    FlatShape(usize),
    #[error("shear Jacobian is singular: degenerate critical point")]
    SingularJacobian,
    #[error("no peripherally trivial integer angle structure exists")]
    NoIntegerStructure,
    #[error("shape parameter {0} lies in {{0, 1}}")]
    DegenerateShape(usize),
    #[error("{0}")]
    Tri(#[from] TriError),
    #[error("{0}")]
    Solve(#[from] SolveError),
}

/// Integer exponent vector over the 3N quads: per tetrahedron the entries
/// sum to 1, edge sums are 2, peripheral sums vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerAngleStructure {
    pub f: Vec<i64>,
}

/// Solve the integer linear system for a peripherally trivial integer angle
/// structure. The returned representative is canonical: the particular
/// solution is reduced into a fundamental domain of the solution lattice,
/// so repeated calls and label-stable inputs give identical vectors.
pub fn find_integer_angle_structure(
    tri: &TriangulationData,
) -> Result<IntegerAngleStructure, TauError> {
    let (rows, rhs) = integer_constraints(tri)?;
    let x = solve_integer(&rows, &rhs).ok_or(TauError::NoIntegerStructure)?;
    let mut f: Vec<i64> = x
        .iter()
        .map(|v| v.to_i64().ok_or(TauError::NoIntegerStructure))
        .collect::<Result<_, _>>()?;
    let kernel: Vec<Vec<i64>> = integer_kernel(&rows)
        .iter()
        .map(|v| v.iter().map(|c| c.to_i64().unwrap()).collect())
        .collect();
    lattice::reduce_mod_lattice(&mut f, kernel);
    Ok(IntegerAngleStructure { f })
}

/// Constraint rows over the 3N quads: tetrahedron sums = 1, edge sums = 2,
/// peripheral sums = 0.
pub fn integer_constraints(
    tri: &TriangulationData,
) -> Result<(Vec<Vec<i64>>, Vec<i64>), TauError> {
    let n = tri.n;
    let mut rows = Vec::with_capacity(2 * n + 2);
    let mut rhs = Vec::with_capacity(2 * n + 2);
    for t in 0..n {
        let mut row = vec![0i64; 3 * n];
        row[t] = 1;
        row[n + t] = 1;
        row[2 * n + t] = 1;
        rows.push(row);
        rhs.push(1);
    }
    for row in tri.edge_rows()? {
        rows.push(row.clone());
        rhs.push(2);
    }
    for row in tri.peripheral_rows()? {
        rows.push(row.clone());
        rhs.push(0);
    }
    Ok((rows, rhs))
}

#[derive(Debug, Clone)]
pub struct TauReport {
    pub tau: f64,
    /// Inverse modulus of the shear Jacobian determinant.
    pub tau1: f64,
    /// Sine product with exponents 2 beta / pi - 1.
    pub tau2: f64,
    /// Tetrahedron orientation count plus Hessian signature.
    pub n_combined: i64,
}

fn quad_args(sol: &ShapeSolution) -> Result<Vec<f64>, TauError> {
    sol.z
        .iter()
        .enumerate()
        .map(|(q, z)| {
            if z.im.abs() < 1e-12 * z.norm() {
                Err(TauError::FlatShape(q))
            } else {
                Ok(z.arg())
            }
        })
        .collect()
}

/// Determinant by Gaussian elimination with partial pivoting.
fn det_real(mut m: Vec<Vec<f64>>) -> f64 {
    let n = m.len();
    let mut det = 1.0;
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs()))
            .unwrap();
        if m[p][c] == 0.0 {
            return 0.0;
        }
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c];
        for r in c + 1..n {
            let factor = m[r][c] / m[c][c];
            for k in c..n {
                m[r][k] -= factor * m[c][k];
            }
        }
    }
    det
}

fn det_complex(mut m: Vec<Vec<Complex>>) -> Complex {
    let n = m.len();
    let mut det = Complex::new(1.0, 0.0);
    for c in 0..n {
        let p = (c..n)
            .max_by(|&i, &j| m[i][c].norm().total_cmp(&m[j][c].norm()))
            .unwrap();
        if m[p][c].norm() == 0.0 {
            return Complex::new(0.0, 0.0);
        }
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c];
        for r in c + 1..n {
            let factor = m[r][c] / m[c][c];
            for k in c..n {
                let sub = factor * m[c][k];
                m[r][k] -= sub;
            }
        }
    }
    det
}

/// The invariant with an explicit exponent structure `beta` (radians over
/// the 3N quads). `beta` must satisfy the angle equations of the component
/// of the solution; the value does not depend on which such structure is
/// chosen.
pub fn tau_with_exponents(
    tri: &TriangulationData,
    sol: &ShapeSolution,
    beta: &[f64],
) -> Result<TauReport, TauError> {
    assert_eq!(beta.len(), 3 * tri.n);
    let alpha = quad_args(sol)?;
    let dim = tri.lstar.len();
    let mut jac = vec![vec![0.0f64; dim]; dim];
    for (i, ri) in tri.lstar.iter().enumerate() {
        for (j, rj) in tri.lstar.iter().enumerate() {
            jac[i][j] = ri
                .iter()
                .zip(rj)
                .zip(&alpha)
                .map(|((&a, &b), th)| (a * b) as f64 / th.tan())
                .sum();
        }
    }
    let det = det_real(jac);
    if !det.is_finite() || det.abs() < 1e-300 {
        return Err(TauError::SingularJacobian);
    }
    let tau1 = 1.0 / det.abs();
    let log_tau2: f64 = alpha
        .iter()
        .zip(beta)
        .map(|(th, b)| (2.0 * b / PI - 1.0) * th.sin().abs().ln())
        .sum();
    let tau2 = log_tau2.exp();
    let report = critical_report(tri, &sol.to_circle())?;
    let n_combined = report.n_plus as i64 - report.n_minus as i64 + report.signature;
    Ok(TauReport {
        tau: (tau1 * tau2).sqrt(),
        tau1,
        tau2,
        n_combined,
    })
}

/// The invariant with the canonical exponent choice pi * f.
pub fn tau(tri: &TriangulationData, sol: &ShapeSolution) -> Result<TauReport, TauError> {
    let f = find_integer_angle_structure(tri)?;
    let beta: Vec<f64> = f.f.iter().map(|&v| PI * v as f64).collect();
    tau_with_exponents(tri, sol, &beta)
}

/// The 1-loop determinant for the peripheral row `gamma_row` (3N wide),
/// defined up to sign. `gamma_row` replaces the redundant last edge
/// equation; the result does not depend on the choice of `f`.
pub fn one_loop(
    tri: &TriangulationData,
    sol: &ShapeSolution,
    f: &IntegerAngleStructure,
    gamma_row: &[i64],
) -> Result<Complex, TauError> {
    let n = tri.n;
    assert_eq!(gamma_row.len(), 3 * n);
    let one = Complex::new(1.0, 0.0);
    let mut zeta = Vec::with_capacity(n);
    for t in 0..n {
        let z = sol.z[t];
        if (z - one).norm() < 1e-14 || z.norm() < 1e-14 {
            return Err(TauError::DegenerateShape(t));
        }
        zeta.push((one / z, one / (one - z), one / (z * (z - one))));
    }
    let edge = tri.edge_rows()?;
    let mut rows: Vec<&[i64]> = edge.iter().take(n - 1).map(|r| r.as_slice()).collect();
    rows.push(gamma_row);
    let m: Vec<Vec<Complex>> = rows
        .iter()
        .map(|row| {
            (0..n)
                .map(|t| {
                    row[t] as f64 * zeta[t].0
                        + row[n + t] as f64 * zeta[t].1
                        + row[2 * n + t] as f64 * zeta[t].2
                })
                .collect()
        })
        .collect();
    let mut denom = Complex::new(2.0, 0.0);
    for t in 0..n {
        denom *= zeta[t].0.powi(f.f[t] as i32)
            * zeta[t].1.powi(f.f[n + t] as i32)
            * zeta[t].2.powi(f.f[2 * n + t] as i32);
    }
    Ok(det_complex(m) / denom)
}

/// Combined oscillatory contribution of a conjugate pair of critical points
/// with multiplicity `d_t`: 2 d_T tau sqrt(2 pi kappa) cos(kappa Vol + pi n/4).
pub fn contribution(report: &TauReport, volume: f64, d_t: i64, kappa: f64) -> f64 {
    2.0 * d_t as f64
        * report.tau
        * (2.0 * PI * kappa).sqrt()
        * (kappa * volume + PI * report.n_combined as f64 / 4.0).cos()
}
