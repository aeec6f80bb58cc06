//! Canonical coset representatives modulo an integer lattice.

/// Bring `basis` to row echelon form over the integers with positive pivots
/// (Hermite-style, pivots scanned left to right). Returns the echelon rows.
fn echelon(mut rows: Vec<Vec<i64>>) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        return rows;
    }
    let width = rows[0].len();
    let mut top = 0;
    for col in 0..width {
        // gcd elimination: shrink entries in this column until one survives
        loop {
            let mut nonzero: Vec<usize> = (top..rows.len())
                .filter(|&r| rows[r][col] != 0)
                .collect();
            if nonzero.len() <= 1 {
                break;
            }
            nonzero.sort_by_key(|&r| rows[r][col].unsigned_abs());
            let (small, other) = (nonzero[0], nonzero[1]);
            let q = rows[other][col].div_euclid(rows[small][col]);
            for k in 0..width {
                rows[other][k] -= q * rows[small][k];
            }
        }
        if let Some(r) = (top..rows.len()).find(|&r| rows[r][col] != 0) {
            rows.swap(top, r);
            if rows[top][col] < 0 {
                for v in rows[top].iter_mut() {
                    *v = -*v;
                }
            }
            top += 1;
        }
    }
    rows.truncate(top);
    rows
}

/// Reduce `x` to the canonical representative of its coset modulo the
/// lattice spanned by `basis`: each pivot coordinate ends up in [0, pivot).
pub fn reduce_mod_lattice(x: &mut [i64], basis: Vec<Vec<i64>>) {
    for row in echelon(basis) {
        let col = row.iter().position(|&v| v != 0).unwrap();
        let q = x[col].div_euclid(row[col]);
        if q != 0 {
            for (xi, ri) in x.iter_mut().zip(&row) {
                *xi -= q * ri;
            }
        }
    }
}
