//! Circle-valued angle structures on an angled ideal triangulation.
//!
//! A structure assigns a unit complex number to every normal quad so that the
//! three values of each tetrahedron multiply to -1 and the edge products are
//! 1. The strict angle structure of the input file sits at `omega_at(a, 0)`;
//! the leading-trailing rows span the tangent directions, so the whole
//! connected component is reachable through `omega_at`. This crate also
//! enumerates the Z2-taut structures of that component and classifies which
//! tetrahedra suppress the large-kappa contribution of a structure.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use special_functions::{lobachevsky, Complex};
use thiserror::Error;
use trimesh_io::{integer_kernel, solve_integer, AngleAssignment, TriangulationData};

#[derive(Debug, Error)]
pub enum AngleError {
    #[error("invalid circle structure: {0}")]
    Invalid(String),
    #[error("membership residual {0:.3e} is too close to the decision boundary")]
    Ambiguous(f64),
    #[error("{0}")]
    Tri(#[from] trimesh_io::TriError),
}

const VALID_TOL: f64 = 1e-12;

/// Point of the circle-valued angle space: one unit complex per quad.
#[derive(Debug, Clone)]
pub struct CircleAngleStructure {
    pub omega: Vec<Complex>,
}

impl CircleAngleStructure {
    /// Check the defining equations: unit modulus, tetrahedron products -1,
    /// edge products 1.
    pub fn validate(&self, tri: &TriangulationData) -> Result<(), AngleError> {
        if self.omega.len() != 3 * tri.n {
            return Err(AngleError::Invalid(format!(
                "expected {} quads, got {}",
                3 * tri.n,
                self.omega.len()
            )));
        }
        for (i, w) in self.omega.iter().enumerate() {
            if (w.norm() - 1.0).abs() > VALID_TOL {
                return Err(AngleError::Invalid(format!(
                    "|omega| = {} at quad {i}",
                    w.norm()
                )));
            }
        }
        for t in 0..tri.n {
            let p = self.omega[t] * self.omega[tri.n + t] * self.omega[2 * tri.n + t];
            if (p + 1.0).norm() > 1e-9 {
                return Err(AngleError::Invalid(format!(
                    "tetrahedron {t} product {p}, want -1"
                )));
            }
        }
        if let Ok(rows) = tri.edge_rows() {
            for (e, row) in rows.iter().enumerate() {
                let mut p = Complex::new(1.0, 0.0);
                for (w, &g) in self.omega.iter().zip(row) {
                    p *= w.powi(g as i32);
                }
                if (p - 1.0).norm() > 1e-9 {
                    return Err(AngleError::Invalid(format!(
                        "edge {e} holonomy {p}, want 1"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The parametrization of the component through `exp(i pi a)`:
/// `omega(q) = exp(i pi a(q) + i sum_j t_j lstar_j(q))`.
pub fn omega_at(
    tri: &TriangulationData,
    a: &AngleAssignment,
    t: &[f64],
) -> CircleAngleStructure {
    assert_eq!(t.len(), tri.lstar.len(), "one coordinate per lstar row");
    let alpha = a.radians();
    let omega = (0..3 * tri.n)
        .map(|q| {
            let mut phase = alpha[q];
            for (tj, row) in t.iter().zip(&tri.lstar) {
                phase += tj * row[q] as f64;
            }
            Complex::from_polar(1.0, phase)
        })
        .collect();
    CircleAngleStructure { omega }
}

/// Multiplicative peripheral holonomy (mu, lambda) of a structure.
pub fn angle_holonomy(
    tri: &TriangulationData,
    omega: &CircleAngleStructure,
) -> Result<(Complex, Complex), AngleError> {
    let rows = tri.peripheral_rows()?;
    let mut h = [Complex::new(1.0, 0.0); 2];
    for (hol, row) in h.iter_mut().zip(rows) {
        for (w, &g) in omega.omega.iter().zip(row) {
            *hol *= w.powi(g as i32);
        }
    }
    Ok((h[0], h[1]))
}

/// Volume functional: the sum of Lobachevsky values of the quad arguments.
pub fn volume(omega: &CircleAngleStructure) -> f64 {
    omega.omega.iter().map(|w| lobachevsky(w.arg())).sum()
}

/// Z2-taut angle structure: signs +-1 per quad, one -1 per tetrahedron.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TautStructure {
    pub signs: Vec<i8>,
}

impl TautStructure {
    pub fn to_circle(&self) -> CircleAngleStructure {
        CircleAngleStructure {
            omega: self
                .signs
                .iter()
                .map(|&s| Complex::new(s as f64, 0.0))
                .collect(),
        }
    }
}

/// All Z2-taut structures lying in the connected component of `exp(i pi a)`,
/// in lexicographic order of the minus-quad choice (unprimed < primed <
/// double-primed per tetrahedron).
pub fn enumerate_taut_in_component(
    tri: &TriangulationData,
    a: &AngleAssignment,
) -> Result<Vec<TautStructure>, AngleError> {
    let n = tri.n;
    let edge = tri.edge_rows()?;
    let peri = tri.peripheral_rows()?;
    let mut found = Vec::new();
    let mut choice = vec![0usize; n]; // which quad of tetrahedron t is -1
    'outer: loop {
        let mut signs = vec![1i8; 3 * n];
        for (t, &c) in choice.iter().enumerate() {
            signs[c * n + t] = -1;
        }
        let parity_ok = edge.iter().chain(peri.iter()).all(|row| {
            let s: i64 = row
                .iter()
                .zip(&signs)
                .filter(|(_, &sg)| sg < 0)
                .map(|(&g, _)| g)
                .sum();
            s % 2 == 0
        });
        if parity_ok {
            let taut = TautStructure { signs };
            if component_membership(tri, &taut.to_circle(), a)? {
                found.push(taut);
            }
        }
        // next choice vector, counting with the unprimed digit fastest would
        // break lexicographic output order, so increment from the right
        for t in (0..n).rev() {
            if choice[t] < 2 {
                choice[t] += 1;
                continue 'outer;
            }
            choice[t] = 0;
        }
        break;
    }
    Ok(found)
}

fn lifted_argument(w: Complex) -> f64 {
    if (w - 1.0).norm() <= 1e-9 {
        0.0
    } else if (w + 1.0).norm() <= 1e-9 {
        PI
    } else {
        let t = w.arg();
        if t < 0.0 {
            t + 2.0 * PI
        } else {
            t
        }
    }
}

/// Whether `target` lies in the connected component of `exp(i pi a)`.
///
/// Writing theta for the lifted arguments of the target, the component
/// condition is: theta - pi a + 2 pi m lies in the real row span of the edge
/// leading-trailing rows for some integer vector m. Projecting by an integer
/// basis K of the kernel of L kills the row-span part, leaving the lattice
/// test K (theta - pi a) / (2 pi) in K(Z^{3N}).
pub fn component_membership(
    tri: &TriangulationData,
    target: &CircleAngleStructure,
    a: &AngleAssignment,
) -> Result<bool, AngleError> {
    target.validate(tri)?;
    let kernel = membership_kernel(tri);
    let alpha = a.radians();
    let y: Vec<f64> = kernel
        .iter()
        .map(|row| {
            let mut s = 0.0;
            for ((w, al), kq) in target.omega.iter().zip(&alpha).zip(row) {
                s += (lifted_argument(*w) - al) * kq.to_f64().unwrap();
            }
            s / (2.0 * PI)
        })
        .collect();
    // every projected coordinate must be an integer
    let mut b = Vec::with_capacity(y.len());
    for &yi in &y {
        let r = yi.round();
        let d = (yi - r).abs();
        if d > 1e-8 && d < 1e-6 {
            return Err(AngleError::Ambiguous(d));
        }
        if d >= 1e-6 {
            return Ok(false);
        }
        b.push(r as i64);
    }
    // and the integer vector must come from the lattice image of K
    let km: Vec<Vec<i64>> = kernel
        .iter()
        .map(|row| row.iter().map(bigint_i64).collect())
        .collect();
    Ok(solve_integer(&km, &b).is_some())
}

fn membership_kernel(tri: &TriangulationData) -> Vec<Vec<BigInt>> {
    // rows k with k . L^T = 0, i.e. an integer basis of ker L
    integer_kernel(&tri.l)
}

fn bigint_i64(b: &BigInt) -> i64 {
    b.to_i64().expect("kernel entry exceeds i64")
}

/// Per-tetrahedron suppression flags plus the total angle defect.
#[derive(Debug, Clone)]
pub struct SuppressionReport {
    pub suppressing: Vec<bool>,
    /// sum over tetrahedra of |Arg w| + |Arg w'| + |Arg w''| - pi; zero
    /// exactly when nothing suppresses.
    pub defect: f64,
}

pub fn classify_suppressing(
    tri: &TriangulationData,
    omega: &CircleAngleStructure,
) -> SuppressionReport {
    let n = tri.n;
    let mut suppressing = Vec::with_capacity(n);
    let mut defect = 0.0;
    for t in 0..n {
        let triple = [omega.omega[t], omega.omega[n + t], omega.omega[2 * n + t]];
        let has_one = triple.iter().any(|w| (w - 1.0).norm() <= 1e-12);
        let all_up = triple.iter().all(|w| w.im > 0.0);
        let all_down = triple.iter().all(|w| w.im < 0.0);
        suppressing.push(!(has_one || all_up || all_down));
        defect += triple.iter().map(|w| w.arg().abs()).sum::<f64>() - PI;
    }
    SuppressionReport { suppressing, defect }
}
