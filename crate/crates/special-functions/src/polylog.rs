use crate::{Complex, SfError};

/// Polylogarithm of non-positive integer order: a rational function with a
/// single pole at z = 1, evaluated via the Eulerian-number closed form
///   Li_{-n}(z) = sum_{j=0}^{n-1} A(n,j) z^{n-j} / (1-z)^{n+1},  n >= 1.
pub fn polylog_nonpos(order: i64, z: Complex) -> Result<Complex, SfError> {
    assert!(order <= 0, "order must be <= 0");
    if (z - 1.0).norm() < 1e-300 {
        return Err(SfError::Pole(format!("Li_{order} has a pole at z = 1")));
    }
    let one = Complex::new(1.0, 0.0);
    if order == 0 {
        return Ok(z / (one - z));
    }
    let n = (-order) as usize;
    // Eulerian triangle A(n, j)
    let mut row = vec![1.0f64];
    for m in 2..=n {
        let mut next = vec![0.0; m];
        for j in 0..m {
            let left = if j < row.len() { row[j] } else { 0.0 };
            let up = if j >= 1 { row[j - 1] } else { 0.0 };
            next[j] = (j as f64 + 1.0) * left + (m as f64 - j as f64) * up;
        }
        row = next;
    }
    let mut num = Complex::new(0.0, 0.0);
    for (j, &a) in row.iter().enumerate() {
        num += a * z.powu((n - j) as u32);
    }
    Ok(num / (one - z).powu((n + 1) as u32))
}
