use std::f64::consts::PI;

use special_functions::Complex;
use trimesh_io::TriangulationData;

use crate::linalg::solve_complex;
use crate::{row_log_residual, ShapeSolution, SolveError};

const TWO_PI_I: Complex = Complex::new(0.0, 2.0 * PI);

/// The integer edge and peripheral targets a log-parameter vector satisfies,
/// rounded to the nearest multiples of i pi. Useful for re-solving around a
/// seed whose branches differ from the complete structure's (2, ..., 2; 0).
pub fn log_branch_targets(
    tri: &TriangulationData,
    zlog: &[Complex],
) -> Result<(Vec<i64>, Vec<i64>), SolveError> {
    let apply = |row: &[i64]| -> f64 {
        row.iter()
            .zip(zlog)
            .map(|(&g, z)| g as f64 * z.im)
            .sum::<f64>()
    };
    let c = tri
        .edge_rows()?
        .iter()
        .map(|row| (apply(row) / PI).round() as i64)
        .collect();
    let d = tri
        .peripheral_rows()?
        .iter()
        .map(|row| (apply(row) / PI).round() as i64)
        .collect();
    Ok((c, d))
}

/// Damped Newton solve of the logarithmic gluing equations from a seed.
///
/// `zlog0` holds 3N log parameters summing to i pi per tetrahedron; the
/// branch offsets of the primed quads are frozen from the seed while the
/// unprimed logs are the unknowns. Targets are i pi c per edge row and
/// i pi d per peripheral row.
pub fn newton_gluing(
    tri: &TriangulationData,
    zlog0: &[Complex],
    edge_target: &[i64],
    peripheral_target: &[i64],
) -> Result<ShapeSolution, SolveError> {
    let n = tri.n;
    assert_eq!(zlog0.len(), 3 * n);
    assert_eq!(edge_target.len(), n);
    assert_eq!(peripheral_target.len(), 2 * tri.k);
    for t in 0..n {
        let s = zlog0[t] + zlog0[n + t] + zlog0[2 * n + t] - Complex::new(0.0, PI);
        if s.norm() > 1e-9 {
            return Err(SolveError::NotShapeSolution(format!(
                "seed logs of tetrahedron {t} sum to i pi + {s}"
            )));
        }
    }

    // frozen integer branch offsets of the primed logs
    let branch: Vec<Complex> = (0..n)
        .map(|t| {
            let z = zlog0[t].exp();
            let principal = (Complex::new(1.0, 0.0) / (Complex::new(1.0, 0.0) - z)).ln();
            let m = ((zlog0[n + t] - principal) / TWO_PI_I).re.round();
            TWO_PI_I * m
        })
        .collect();

    // N equations: the first N-1 edge rows plus the mu completeness row
    let edge = tri.edge_rows()?.to_vec();
    let peri = tri.peripheral_rows()?.to_vec();
    let mut rows: Vec<&Vec<i64>> = edge.iter().take(n - 1).collect();
    rows.push(&peri[0]);
    let mut targets: Vec<Complex> = edge_target
        .iter()
        .take(n - 1)
        .map(|&c| Complex::new(0.0, PI * c as f64))
        .collect();
    targets.push(Complex::new(0.0, PI * peripheral_target[0] as f64));

    let expand = |zu: &[Complex]| -> Result<Vec<Complex>, SolveError> {
        let mut zlog = vec![Complex::new(0.0, 0.0); 3 * n];
        for t in 0..n {
            let z = zu[t].exp();
            if z.norm() < 1e-12 || (z - 1.0).norm() < 1e-12 || z.norm() > 1e12 {
                return Err(SolveError::ShapeCollapse(z));
            }
            zlog[t] = zu[t];
            zlog[n + t] =
                (Complex::new(1.0, 0.0) / (Complex::new(1.0, 0.0) - z)).ln() + branch[t];
            zlog[2 * n + t] = Complex::new(0.0, PI) - zlog[t] - zlog[n + t];
        }
        Ok(zlog)
    };
    let resid = |zlog: &[Complex]| -> Vec<Complex> {
        rows.iter()
            .zip(&targets)
            .map(|(row, want)| {
                row.iter()
                    .zip(zlog)
                    .map(|(&g, z)| g as f64 * z)
                    .sum::<Complex>()
                    - want
            })
            .collect()
    };
    let norm2 = |v: &[Complex]| v.iter().map(|x| x.norm_sqr()).sum::<f64>();

    let mut zu: Vec<Complex> = zlog0[..n].to_vec();
    let mut zlog = expand(&zu)?;
    let mut f = resid(&zlog);
    let mut iterations = 0usize;
    while norm2(&f).sqrt() > 1e-13 {
        if iterations >= 60 {
            return Err(SolveError::NoConvergence {
                iterations,
                residual: norm2(&f).sqrt(),
            });
        }
        // dZ'/dZ = z/(1-z), dZ''/dZ = -1 - z/(1-z)
        let jac: Vec<Vec<Complex>> = rows
            .iter()
            .map(|row| {
                (0..n)
                    .map(|t| {
                        let z = zu[t].exp();
                        let dp = z / (Complex::new(1.0, 0.0) - z);
                        Complex::new(row[t] as f64, 0.0)
                            + row[n + t] as f64 * dp
                            + row[2 * n + t] as f64 * (-Complex::new(1.0, 0.0) - dp)
                    })
                    .collect()
            })
            .collect();
        let neg_f: Vec<Complex> = f.iter().map(|x| -x).collect();
        let step = solve_complex(&jac, &neg_f)?;
        let base = norm2(&f);
        let mut s = 1.0f64;
        loop {
            let cand: Vec<Complex> =
                zu.iter().zip(&step).map(|(z, d)| z + s * d).collect();
            match expand(&cand) {
                Ok(logs) => {
                    let fc = resid(&logs);
                    if norm2(&fc) <= (1.0 - 1e-4 * s) * base {
                        zu = cand;
                        zlog = logs;
                        f = fc;
                        break;
                    }
                }
                Err(_) => {}
            }
            s *= 0.5;
            if s < 1e-10 {
                return Err(SolveError::NoConvergence {
                    iterations,
                    residual: base.sqrt(),
                });
            }
        }
        iterations += 1;
    }

    let z: Vec<Complex> = zlog.iter().map(|l| l.exp()).collect();
    let residual = row_log_residual(tri, &zlog, edge_target, peripheral_target)?;
    if residual > 1e-12 {
        return Err(SolveError::NotShapeSolution(format!(
            "converged on the reduced rows but a dropped row has defect {residual:.3e}"
        )));
    }
    Ok(ShapeSolution { z, zlog, residual })
}
