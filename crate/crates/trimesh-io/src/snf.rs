//! Smith normal form and related integer-lattice utilities.
//!
//! Arithmetic is exact (`BigInt`), so there is no overflow to detect; the
//! covering-degree computation downstream only converts the final product
//! back to machine integers, reporting failure if it does not fit.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone)]
pub struct MatrixNormalForm {
    /// Non-zero elementary divisors in divisibility order d1 | d2 | ...
    pub diag: Vec<BigInt>,
    pub rank: usize,
    /// Product of the non-zero elementary divisors.
    pub pned: BigInt,
}

type Mat = Vec<Vec<BigInt>>;

fn to_big(m: &[Vec<i64>]) -> Mat {
    m.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

fn identity(n: usize) -> Mat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// Smith normal form of an integer matrix.
pub fn smith_normal_form(m: &[Vec<i64>]) -> MatrixNormalForm {
    let (d, _, _) = snf_big(to_big(m), false);
    finish(d)
}

/// Smith normal form together with unimodular transforms `U`, `V` such that
/// `U * M * V = D`.
pub fn snf_with_transforms(m: &[Vec<i64>]) -> (MatrixNormalForm, Mat, Mat) {
    let (d, u, v) = snf_big(to_big(m), true);
    (finish(d), u, v)
}

fn finish(d: Mat) -> MatrixNormalForm {
    let r = d.len().min(d.first().map_or(0, |row| row.len()));
    let mut diag = Vec::new();
    for i in 0..r {
        if !d[i][i].is_zero() {
            diag.push(d[i][i].abs());
        }
    }
    let rank = diag.len();
    let pned = diag.iter().product();
    MatrixNormalForm { diag, rank, pned }
}

/// Core reduction. Returns (D, U, V); U, V are identity-sized placeholders
/// when `track` is false.
fn snf_big(mut a: Mat, track: bool) -> (Mat, Mat, Mat) {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut u = if track { identity(rows) } else { Vec::new() };
    let mut v = if track { identity(cols) } else { Vec::new() };
    if rows == 0 || cols == 0 {
        return (a, u, v);
    }

    let mut p = 0;
    while p < rows.min(cols) {
        // pivot: non-zero entry of minimal magnitude in the trailing block
        let mut pivot: Option<(usize, usize)> = None;
        for i in p..rows {
            for j in p..cols {
                if !a[i][j].is_zero()
                    && pivot
                        .map(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs())
                        .unwrap_or(true)
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        a.swap(p, pi);
        if track {
            u.swap(p, pi);
        }
        swap_cols(&mut a, p, pj);
        if track {
            swap_cols(&mut v, p, pj);
        }

        // clear row p and column p by Euclidean steps
        let mut clean = false;
        while !clean {
            clean = true;
            for i in p + 1..rows {
                if a[i][p].is_zero() {
                    continue;
                }
                let q = div_round(&a[i][p], &a[p][p]);
                row_sub(&mut a, i, p, &q);
                if track {
                    row_sub(&mut u, i, p, &q);
                }
                if !a[i][p].is_zero() {
                    a.swap(p, i);
                    if track {
                        u.swap(p, i);
                    }
                    clean = false;
                }
            }
            for j in p + 1..cols {
                if a[p][j].is_zero() {
                    continue;
                }
                let q = div_round(&a[p][j], &a[p][p]);
                col_sub(&mut a, j, p, &q);
                if track {
                    col_sub(&mut v, j, p, &q);
                }
                if !a[p][j].is_zero() {
                    swap_cols(&mut a, p, j);
                    if track {
                        swap_cols(&mut v, p, j);
                    }
                    clean = false;
                }
            }
            if clean {
                // enforce divisibility of the trailing block by the pivot
                'scan: for i in p + 1..rows {
                    for j in p + 1..cols {
                        if !(&a[i][j] % &a[p][p]).is_zero() {
                            let one = BigInt::one();
                            row_sub(&mut a, p, i, &(-&one));
                            if track {
                                row_sub(&mut u, p, i, &(-&one));
                            }
                            clean = false;
                            break 'scan;
                        }
                    }
                }
            }
        }
        if a[p][p].is_negative() {
            for x in a[p].iter_mut() {
                *x = -std::mem::take(x);
            }
            if track {
                for x in u[p].iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
        }
        p += 1;
    }
    (a, u, v)
}

fn swap_cols(m: &mut Mat, a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

fn row_sub(m: &mut Mat, i: usize, p: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let prow = m[p].clone();
    for (x, y) in m[i].iter_mut().zip(prow.iter()) {
        *x -= q * y;
    }
}

fn col_sub(m: &mut Mat, j: usize, p: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let y = row[p].clone();
        row[j] -= q * y;
    }
}

/// Rounded division keeps pivot growth under control.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if r.abs() * BigInt::from(2) > b.abs() {
        if (a.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

/// Integer basis of the right kernel `{x : M x = 0}`.
pub fn integer_kernel(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    let cols = m.first().map_or(0, |r| r.len());
    let (nf, _, v) = snf_with_transforms(m);
    (nf.rank..cols).map(|j| (0..cols).map(|i| v[i][j].clone()).collect()).collect()
}

/// One integer solution of `M x = b`, if any exists.
pub fn solve_integer(m: &[Vec<i64>], b: &[i64]) -> Option<Vec<BigInt>> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    assert_eq!(b.len(), rows);
    let (nf, u, v) = snf_with_transforms(m);
    // U M V = D, x = V y, D y = U b
    let ub: Vec<BigInt> = (0..rows)
        .map(|i| (0..rows).map(|j| &u[i][j] * BigInt::from(b[j])).sum())
        .collect();
    let mut y = vec![BigInt::zero(); cols];
    for (i, ubi) in ub.iter().enumerate() {
        if i < nf.rank {
            let d = &nf.diag[i];
            let (q, r) = ubi.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ubi.is_zero() {
            return None;
        }
    }
    Some(
        (0..cols)
            .map(|i| (0..cols).map(|j| &v[i][j] * &y[j]).sum())
            .collect(),
    )
}
