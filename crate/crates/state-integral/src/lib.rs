//! Riemann-sum evaluation of the meromorphic 3D-index state integral.
//!
//! The integral over the (N-1)-torus of a product of tetrahedral weights is
//! approximated on the uniform grid t_j = 2 pi n_j / S. Stage one tabulates
//! every weight at all S scaled roots of unity; stage two walks the grid by
//! exact modular index arithmetic, so no floating-point phase accumulates
//! and results are bit-reproducible regardless of thread count.

use std::f64::consts::PI;
use std::time::Instant;

use special_functions::{c_q, g_q, Complex, QParam};
use thiserror::Error;
use trimesh_io::{AngleAssignment, TriangulationData};

mod emit;
mod sum;

pub use emit::emit_result;

#[derive(Debug, Error)]
pub enum IndexError {
    #[error("resource cap exceeded: {needed} integrand evaluations, cap {cap}")]
    ResourceCap { needed: u128, cap: u64 },
    #[error("tabulation failed at quad {quad}, sample {sample}: {source}")]
    Tabulation {
        quad: usize,
        sample: usize,
        source: special_functions::SfError,
    },
    #[error("{0}")]
    Sf(#[from] special_functions::SfError),
    #[error("non-finite value produced")]
    NonFinite,
}

/// Stage-one table: per quad, the weight at all S scaled roots of unity.
pub struct Tabulation {
    /// `table[q][n] = G_q(exp((hbar + i pi) a(q)) zeta_S^n)`.
    pub table: Vec<Vec<Complex>>,
    pub samples: usize,
    pub qp: QParam,
    pub c_q: Complex,
}

/// Evaluation settings; `Default` matches the command-line defaults.
#[derive(Debug, Clone)]
pub struct IntegrateOptions {
    /// Maximum number of integrand evaluations (grid points).
    pub eval_cap: u64,
    /// Drop this edge row instead of the last one when forming the N-1
    /// deformation rows; the result is invariant under this choice.
    pub omit_edge: usize,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        IntegrateOptions {
            eval_cap: 1_000_000_000,
            omit_edge: usize::MAX,
        }
    }
}

#[derive(Debug, Clone)]
pub struct IndexResult {
    pub value: Complex,
    pub samples: usize,
    pub hbar: Complex,
    pub tabulation_seconds: f64,
    pub integration_seconds: f64,
}

/// The point of the unit disc whose weight enters the integrand for quad
/// angle `a` (units of pi) at grid phase `phase` radians.
fn weight_argument(qp: &QParam, a: f64, phase: f64) -> Complex {
    ((qp.hbar + Complex::new(0.0, PI)) * a).exp() * Complex::from_polar(1.0, phase)
}

/// Tabulate every quad weight at the S scaled roots of unity.
pub fn tabulate(
    tri: &TriangulationData,
    a: &AngleAssignment,
    qp: &QParam,
    samples: usize,
) -> Result<Tabulation, IndexError> {
    assert!(samples >= 1);
    assert_eq!(a.a.len(), 3 * tri.n, "one angle per quad");
    let cq = c_q(qp)?;
    let quads: Vec<(usize, f64)> = a.a.iter().cloned().enumerate().collect();
    let build = |(q, aq): &(usize, f64)| -> Result<Vec<Complex>, IndexError> {
        (0..samples)
            .map(|n| {
                let z = weight_argument(qp, *aq, 2.0 * PI * n as f64 / samples as f64);
                g_q(z, qp).map_err(|source| IndexError::Tabulation {
                    quad: *q,
                    sample: n,
                    source,
                })
            })
            .collect()
    };
    #[cfg(feature = "parallel")]
    let table: Result<Vec<_>, _> = {
        use rayon::prelude::*;
        quads.par_iter().map(build).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let table: Result<Vec<_>, _> = quads.iter().map(build).collect();
    let table = table?;
    if table
        .iter()
        .any(|col| col.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()))
    {
        return Err(IndexError::NonFinite);
    }
    Ok(Tabulation {
        table,
        samples,
        qp: *qp,
        c_q: cq,
    })
}

/// Direct (table-free) evaluation of the integrand at torus point `t`.
pub fn integrand_at(
    tri: &TriangulationData,
    a: &AngleAssignment,
    qp: &QParam,
    t: &[f64],
) -> Result<Complex, IndexError> {
    assert_eq!(t.len(), tri.lstar.len());
    let mut prod = Complex::new(1.0, 0.0);
    for (q, aq) in a.a.iter().enumerate() {
        let mut phase = 0.0;
        for (tj, row) in t.iter().zip(&tri.lstar) {
            phase += tj * row[q] as f64;
        }
        prod *= g_q(weight_argument(qp, *aq, phase), qp)?;
    }
    Ok(prod)
}

fn deformation_rows(tri: &TriangulationData, opts: &IntegrateOptions) -> Vec<Vec<i64>> {
    if opts.omit_edge == usize::MAX {
        tri.lstar.clone()
    } else {
        tri.lstar_omitting(opts.omit_edge)
    }
}

/// Evaluate the state integral with default settings.
pub fn integrate(
    tri: &TriangulationData,
    a: &AngleAssignment,
    qp: &QParam,
    samples: usize,
) -> Result<IndexResult, IndexError> {
    integrate_with(tri, a, qp, samples, &IntegrateOptions::default())
}

pub fn integrate_with(
    tri: &TriangulationData,
    a: &AngleAssignment,
    qp: &QParam,
    samples: usize,
    opts: &IntegrateOptions,
) -> Result<IndexResult, IndexError> {
    let dim = tri.lstar.len();
    let needed = (samples as u128).pow(dim as u32);
    if needed > opts.eval_cap as u128 {
        return Err(IndexError::ResourceCap {
            needed,
            cap: opts.eval_cap,
        });
    }
    let t0 = Instant::now();
    let tab = tabulate(tri, a, qp, samples)?;
    let tabulation_seconds = t0.elapsed().as_secs_f64();

    let t1 = Instant::now();
    let rows = deformation_rows(tri, opts);
    let sum = sum::grid_sum(&tab.table, &rows, samples);
    let integration_seconds = t1.elapsed().as_secs_f64();

    let norm = tab.c_q.powu(tri.n as u32) / (samples as f64).powi(dim as i32);
    let value = norm * sum;
    if !value.re.is_finite() || !value.im.is_finite() {
        return Err(IndexError::NonFinite);
    }
    Ok(IndexResult {
        value,
        samples,
        hbar: qp.hbar,
        tabulation_seconds,
        integration_seconds,
    })
}
