//! Shape solutions of Thurston's gluing equations.
//!
//! The geometric solver walks the strict angle structure to the critical
//! point of the volume functional (where all shearing displacements vanish)
//! and reads off the tetrahedron shapes. A log-branch-aware damped Newton
//! iteration reaches deformed solutions from user-supplied seeds. The crate
//! also reports Hessian data used by the stationary-phase contributions and
//! the cusp shape obtained from one linearization of the gluing variety.

use std::f64::consts::PI;

use angle_spaces::{omega_at, volume, CircleAngleStructure};
use special_functions::Complex;
use thiserror::Error;
use trimesh_io::{AngleAssignment, TriangulationData};

mod cusp;
mod linalg;
mod newton;

pub use cusp::cusp_shape;
pub use linalg::{solve_complex, solve_real, symmetric_eigenvalues};
pub use newton::{log_branch_targets, newton_gluing};

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("flat angle: |Im omega| = {0:.3e} at quad {1}")]
    FlatAngle(f64, usize),
    #[error("singular linear system")]
    SingularSystem,
    #[error("no convergence after {iterations} iterations, residual {residual:.3e}")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("not a shape solution: {0}")]
    NotShapeSolution(String),
    #[error("shape collapsed towards {0}")]
    ShapeCollapse(Complex),
    #[error("{0}")]
    Tri(#[from] trimesh_io::TriError),
    #[error("{0}")]
    Angle(#[from] angle_spaces::AngleError),
}

/// A solution of the gluing equations: shapes, chosen log branches, and the
/// worst edge/completeness defect.
#[derive(Debug, Clone)]
pub struct ShapeSolution {
    /// 3N shapes in quad order (z, z', z'').
    pub z: Vec<Complex>,
    /// 3N log parameters; per tetrahedron they sum to i pi.
    pub zlog: Vec<Complex>,
    pub residual: f64,
}

impl ShapeSolution {
    pub fn n(&self) -> usize {
        self.z.len() / 3
    }

    /// Shapes of the unprimed quads.
    pub fn primary(&self) -> &[Complex] {
        &self.z[..self.n()]
    }

    pub fn conjugate(&self) -> ShapeSolution {
        ShapeSolution {
            z: self.z.iter().map(|z| z.conj()).collect(),
            // conjugation flips the tetrahedron sum to -i pi; rebuild the
            // double-primed branch so it stays +i pi
            zlog: rebuild_logs(&self.z.iter().map(|z| z.conj()).collect::<Vec<_>>()),
            residual: self.residual,
        }
    }

    /// The circle-valued angle structure under the shapes: omega = z/|z|.
    pub fn to_circle(&self) -> CircleAngleStructure {
        CircleAngleStructure {
            omega: self.z.iter().map(|z| z / z.norm()).collect(),
        }
    }
}

/// Hessian and orientation data of a critical point of the volume.
#[derive(Debug, Clone)]
pub struct CriticalPointReport {
    pub omega: CircleAngleStructure,
    pub hessian: Vec<Vec<f64>>,
    /// Eigenvalue signature of the Hessian.
    pub signature: i64,
    pub n_plus: usize,
    pub n_minus: usize,
    pub volume: f64,
    /// True when an eigenvalue falls under the 1e-9 relative threshold; the
    /// signature is then unreliable and no stationary-phase contribution
    /// should be emitted.
    pub degenerate: bool,
}

fn quad_arguments(omega: &CircleAngleStructure) -> Result<Vec<f64>, SolveError> {
    omega
        .omega
        .iter()
        .enumerate()
        .map(|(q, w)| {
            if w.im.abs() < 1e-14 {
                Err(SolveError::FlatAngle(w.im.abs(), q))
            } else {
                Ok(w.arg())
            }
        })
        .collect()
}

/// Shearing displacements along all N leading-trailing rows:
/// `S_j = -sum_q l_j(q) ln|sin Arg omega(q)|`. The components sum to zero.
pub fn shear(
    tri: &TriangulationData,
    omega: &CircleAngleStructure,
) -> Result<Vec<f64>, SolveError> {
    let theta = quad_arguments(omega)?;
    Ok(tri.l.iter().map(|row| shear_row(row, &theta)).collect())
}

fn shear_row(row: &[i64], theta: &[f64]) -> f64 {
    -row.iter()
        .zip(theta)
        .map(|(&l, th)| l as f64 * th.sin().abs().ln())
        .sum::<f64>()
}

fn hessian_matrix(tri: &TriangulationData, theta: &[f64]) -> Vec<Vec<f64>> {
    // H = -L_* diag{cot theta} L_*^T
    let rows = &tri.lstar;
    let cot: Vec<f64> = theta.iter().map(|t| t.cos() / t.sin()).collect();
    rows.iter()
        .map(|ri| {
            rows.iter()
                .map(|rj| {
                    -ri.iter()
                        .zip(rj)
                        .zip(&cot)
                        .map(|((&a, &b), c)| a as f64 * b as f64 * c)
                        .sum::<f64>()
                })
                .collect()
        })
        .collect()
}

/// Hessian, signature, orientation counts, and volume at a circle structure.
pub fn critical_report(
    tri: &TriangulationData,
    omega: &CircleAngleStructure,
) -> Result<CriticalPointReport, SolveError> {
    let theta = quad_arguments(omega)?;
    let hessian = hessian_matrix(tri, &theta);
    let ev = symmetric_eigenvalues(&hessian);
    let scale = ev.iter().fold(0.0f64, |m, e| m.max(e.abs()));
    let thresh = 1e-9 * scale.max(1e-300);
    let degenerate = ev.iter().any(|e| e.abs() < thresh);
    let signature = ev.iter().map(|e| if *e > 0.0 { 1i64 } else { -1 }).sum();
    let n = tri.n;
    let mut n_plus = 0;
    let mut n_minus = 0;
    for t in 0..n {
        // all three quad arguments of a tetrahedron share a sign
        if theta[t] > 0.0 {
            n_plus += 1;
        } else {
            n_minus += 1;
        }
    }
    Ok(CriticalPointReport {
        omega: omega.clone(),
        hessian,
        signature,
        n_plus,
        n_minus,
        volume: volume(omega),
        degenerate,
    })
}

fn rebuild_logs(z: &[Complex]) -> Vec<Complex> {
    let n = z.len() / 3;
    let mut zlog = vec![Complex::new(0.0, 0.0); 3 * n];
    for t in 0..n {
        let a = z[t].ln();
        let b = z[n + t].ln();
        zlog[t] = a;
        zlog[n + t] = b;
        zlog[2 * n + t] = Complex::new(0.0, PI) - a - b;
    }
    zlog
}

pub(crate) fn row_log_residual(
    tri: &TriangulationData,
    zlog: &[Complex],
    edge_target: &[i64],
    peripheral_target: &[i64],
) -> Result<f64, SolveError> {
    let mut worst = 0.0f64;
    let apply = |row: &[i64]| -> Complex {
        row.iter()
            .zip(zlog)
            .map(|(&g, z)| g as f64 * z)
            .sum::<Complex>()
    };
    for (row, &c) in tri.edge_rows()?.iter().zip(edge_target) {
        worst = worst.max((apply(row) - Complex::new(0.0, PI * c as f64)).norm());
    }
    for (row, &d) in tri.peripheral_rows()?.iter().zip(peripheral_target) {
        worst = worst.max((apply(row) - Complex::new(0.0, PI * d as f64)).norm());
    }
    Ok(worst)
}

/// Shapes determined by a circle structure away from flat angles:
/// `z = |Im omega' / Im omega''| omega`, cyclically for the primed quads.
pub fn shapes_from_circle(
    tri: &TriangulationData,
    omega: &CircleAngleStructure,
) -> Result<Vec<Complex>, SolveError> {
    let n = tri.n;
    let w = &omega.omega;
    let mut z = vec![Complex::new(0.0, 0.0); 3 * n];
    for t in 0..n {
        let triple = [w[t], w[n + t], w[2 * n + t]];
        for j in 0..3 {
            let next = triple[(j + 1) % 3].im;
            let prev = triple[(j + 2) % 3].im;
            z[j * n + t] = (next / prev).abs() * triple[j];
        }
    }
    Ok(z)
}

fn check_z_relations(z: &[Complex], n: usize) -> Result<(), SolveError> {
    let one = Complex::new(1.0, 0.0);
    for t in 0..n {
        let (a, b, c) = (z[t], z[n + t], z[2 * n + t]);
        if (b - one / (one - a)).norm() > 1e-10 || (c - (a - one) / a).norm() > 1e-10 {
            return Err(SolveError::NotShapeSolution(format!(
                "tetrahedron {t}: shape relations fail for ({a}, {b}, {c})"
            )));
        }
    }
    Ok(())
}

/// Newton iteration from a strict angle structure to the critical point of
/// the volume along its component; returns the shape solution and the
/// critical-point data. The step is clipped so all angles remain in (0, pi)
/// and damped by backtracking on the shear norm.
pub fn solve_geometric(
    tri: &TriangulationData,
    a0: &AngleAssignment,
) -> Result<(ShapeSolution, CriticalPointReport), SolveError> {
    let dim = tri.lstar.len();
    let alpha = a0.radians();
    let mut t = vec![0.0; dim];

    let angles = |t: &[f64]| -> Vec<f64> {
        (0..3 * tri.n)
            .map(|q| {
                let mut th = alpha[q];
                for (tj, row) in t.iter().zip(&tri.lstar) {
                    th += tj * row[q] as f64;
                }
                th
            })
            .collect()
    };
    let f_of = |theta: &[f64]| -> Vec<f64> {
        tri.lstar.iter().map(|row| shear_row(row, theta)).collect()
    };
    let norm2 = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>();

    let mut theta = angles(&t);
    let mut f = f_of(&theta);
    let mut iterations = 0usize;
    while f.iter().map(|x| x.abs()).fold(0.0f64, f64::max) > 1e-12 {
        if iterations >= 100 {
            return Err(SolveError::NoConvergence {
                iterations,
                residual: norm2(&f).sqrt(),
            });
        }
        let jac = hessian_matrix(tri, &theta);
        let neg_f: Vec<f64> = f.iter().map(|x| -x).collect();
        let dt = solve_real(&jac, &neg_f)?;
        // clip so every angle stays strictly inside (0, pi)
        let delta: Vec<f64> = (0..3 * tri.n)
            .map(|q| {
                tri.lstar
                    .iter()
                    .zip(&dt)
                    .map(|(row, d)| row[q] as f64 * d)
                    .sum()
            })
            .collect();
        let mut s: f64 = 1.0;
        for (th, d) in theta.iter().zip(&delta) {
            if *d > 0.0 {
                s = s.min(0.99 * (PI - th) / d);
            } else if *d < 0.0 {
                s = s.min(0.99 * th / -d);
            }
        }
        if s <= 1e-14 {
            return Err(SolveError::NoConvergence {
                iterations,
                residual: norm2(&f).sqrt(),
            });
        }
        // Armijo backtracking on |shear|^2
        let base = norm2(&f);
        loop {
            let cand: Vec<f64> = t.iter().zip(&dt).map(|(a, d)| a + s * d).collect();
            let th_cand = angles(&cand);
            let f_cand = f_of(&th_cand);
            if norm2(&f_cand) <= (1.0 - 1e-4 * s) * base {
                t = cand;
                theta = th_cand;
                f = f_cand;
                break;
            }
            s *= 0.5;
            if s < 1e-12 {
                return Err(SolveError::NoConvergence {
                    iterations,
                    residual: base.sqrt(),
                });
            }
        }
        iterations += 1;
    }

    let omega = omega_at(tri, a0, &t);
    let report = critical_report(tri, &omega)?;
    let z = shapes_from_circle(tri, &omega)?;
    check_z_relations(&z, tri.n)?;
    let zlog = rebuild_logs(&z);
    let residual = row_log_residual(tri, &zlog, &vec![2; tri.n], &[0, 0])?;
    if residual > 1e-10 {
        return Err(SolveError::NotShapeSolution(format!(
            "edge/completeness defect {residual:.3e}"
        )));
    }
    Ok((
        ShapeSolution { z, zlog, residual },
        report,
    ))
}
