//! Data model for angled ideal triangulations.
//!
//! A triangulation with `N` tetrahedra and `k` cusps is described by its
//! integer gluing matrix: `N` edge rows followed by `2k` peripheral rows
//! (meridian, longitude per cusp), each of length `3N` in the quad ordering
//! `q_1..q_N; q'_1..q'_N; q''_1..q''_N`. The leading-trailing matrix `L` is
//! derived from the gluing blocks and spans the tangent directions used by
//! every downstream solver.

mod data;
mod snf;

pub use data::{
    load_triangulation, parse_triangulation, peripheral_angle_holonomy,
    AngleAssignment, TriError, TriangulationData,
};
pub use snf::{
    integer_kernel, smith_normal_form, snf_with_transforms, solve_integer,
    MatrixNormalForm,
};

/// Derive the leading-trailing matrix `[G''-G' | G-G'' | G'-G]` from gluing
/// rows in block form `[G | G' | G'']`.
pub fn derive_leading_trailing(rows: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    rows.iter()
        .map(|row| {
            assert_eq!(row.len(), 3 * n, "gluing row must have 3N entries");
            let (g, gp, gpp) = (&row[..n], &row[n..2 * n], &row[2 * n..]);
            let mut out = Vec::with_capacity(3 * n);
            out.extend((0..n).map(|t| gpp[t] - gp[t]));
            out.extend((0..n).map(|t| g[t] - gpp[t]));
            out.extend((0..n).map(|t| gp[t] - g[t]));
            out
        })
        .collect()
}

/// Covering degree: product of non-zero elementary divisors of `L^T`.
/// The boolean is set when the product has a non-trivial odd factor,
/// which the theory does not predict for valid inputs.
pub fn homology_order(t: &TriangulationData) -> (u64, bool) {
    let lt = transpose(&t.l);
    let nf = smith_normal_form(&lt);
    let d: u64 = nf
        .pned
        .try_into()
        .expect("covering degree exceeds u64 range");
    let mut odd = d;
    while odd % 2 == 0 {
        odd /= 2;
    }
    (d, odd > 1)
}

pub fn transpose(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if m.is_empty() {
        return Vec::new();
    }
    let rows = m.len();
    let cols = m[0].len();
    (0..cols)
        .map(|j| (0..rows).map(|i| m[i][j]).collect())
        .collect()
}
