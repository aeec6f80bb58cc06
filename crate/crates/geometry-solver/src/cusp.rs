use special_functions::Complex;
use trimesh_io::TriangulationData;

use crate::linalg::solve_complex;
use crate::{ShapeSolution, SolveError};

/// Cusp shape sigma = dv/du at the complete structure, from one linear solve.
///
/// A tangent vector dz of the gluing variety is pinned down by the linearized
/// edge equations together with the normalization du = 1, where u and v are
/// the log-holonomies of mu and lambda. The derivative of a row applied to
/// the log parameters with respect to z is r/z + r'/(1-z) + r''/(z(z-1)).
pub fn cusp_shape(
    tri: &TriangulationData,
    sol: &ShapeSolution,
) -> Result<Complex, SolveError> {
    let n = tri.n;
    let one = Complex::new(1.0, 0.0);
    let coeffs = |row: &[i64]| -> Vec<Complex> {
        (0..n)
            .map(|t| {
                let z = sol.z[t];
                row[t] as f64 / z
                    + row[n + t] as f64 / (one - z)
                    + row[2 * n + t] as f64 / (z * (z - one))
            })
            .collect()
    };
    let edge = tri.edge_rows()?;
    let peri = tri.peripheral_rows()?;
    let mut m: Vec<Vec<Complex>> = edge.iter().take(n - 1).map(|r| coeffs(r)).collect();
    m.push(coeffs(&peri[0]));
    let mut rhs = vec![Complex::new(0.0, 0.0); n];
    rhs[n - 1] = one;
    let dz = solve_complex(&m, &rhs)?;
    let sigma: Complex = coeffs(&peri[1]).iter().zip(&dz).map(|(c, d)| c * d).sum();
    if sigma.im.abs() < 1e-12 {
        return Err(SolveError::NotShapeSolution(format!(
            "cusp shape {sigma} has no imaginary part"
        )));
    }
    Ok(sigma)
}
