use std::path::PathBuf;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use trimesh_io::{
    homology_order, integer_kernel, load_triangulation, smith_normal_form,
    solve_integer, transpose,
};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

#[test]
fn identity_has_unit_divisors() {
    let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
    let nf = smith_normal_form(&id);
    assert_eq!(nf.diag, vec![big(1), big(1), big(1)]);
    assert_eq!(nf.rank, 3);
    assert_eq!(nf.pned, big(1));
}

#[test]
fn diag_two_three_reduces_to_one_six() {
    let m = vec![vec![2, 0], vec![0, 3]];
    let nf = smith_normal_form(&m);
    assert_eq!(nf.diag, vec![big(1), big(6)]);
    assert_eq!(nf.pned, big(6));
}

#[test]
fn covering_degree_of_fixtures() {
    for name in ["4_1", "m011"] {
        let (t, _) = load_triangulation(fixture(&format!("{name}.json"))).unwrap();
        let (d, odd) = homology_order(&t);
        assert_eq!(d, 1, "{name}");
        assert!(!odd);
    }
}

#[test]
fn snf_invariant_under_permutations_and_transpose() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    for _ in 0..40 {
        let rows = rng.gen_range(2..5);
        let cols = rng.gen_range(2..6);
        let m: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(-6..7)).collect())
            .collect();
        let base = smith_normal_form(&m);

        let mut perm = m.clone();
        perm.reverse();
        for row in perm.iter_mut() {
            row.reverse();
        }
        let p = smith_normal_form(&perm);
        assert_eq!(base.diag, p.diag);

        let t = smith_normal_form(&transpose(&m));
        assert_eq!(base.pned, t.pned);
    }
}

#[test]
fn snf_transforms_are_consistent() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let rows = rng.gen_range(2..5);
        let cols = rng.gen_range(2..6);
        let m: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(-5..6)).collect())
            .collect();
        let (nf, u, v) = trimesh_io::snf_with_transforms(&m);
        // U M V must be diagonal with the elementary divisors
        for i in 0..rows {
            for j in 0..cols {
                let mut s = BigInt::from(0);
                for p in 0..rows {
                    for q in 0..cols {
                        s += &u[i][p] * big(m[p][q]) * &v[q][j];
                    }
                }
                let expect = if i == j && i < nf.rank {
                    nf.diag[i].clone()
                } else {
                    big(0)
                };
                assert_eq!(s, expect, "entry ({i},{j})");
            }
        }
    }
}

#[test]
fn kernel_vectors_annihilate() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
    for _ in 0..20 {
        let rows = rng.gen_range(1..4);
        let cols = rng.gen_range(3..7);
        let m: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(-4..5)).collect())
            .collect();
        let ker = integer_kernel(&m);
        let nf = smith_normal_form(&m);
        assert_eq!(ker.len(), cols - nf.rank);
        for kv in &ker {
            for row in &m {
                let s: BigInt =
                    row.iter().zip(kv).map(|(&c, x)| big(c) * x).sum();
                assert_eq!(s, big(0));
            }
        }
    }
}

#[test]
fn integer_solve_round_trips() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
    for _ in 0..30 {
        let rows = rng.gen_range(2..4);
        let cols = rng.gen_range(2..6);
        let m: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(-4..5)).collect())
            .collect();
        let x0: Vec<i64> = (0..cols).map(|_| rng.gen_range(-3..4)).collect();
        let b: Vec<i64> = m
            .iter()
            .map(|row| row.iter().zip(&x0).map(|(&c, &x)| c * x).sum())
            .collect();
        let sol = solve_integer(&m, &b).expect("constructed system is solvable");
        for (row, &bi) in m.iter().zip(&b) {
            let s: BigInt = row.iter().zip(&sol).map(|(&c, x)| big(c) * x).sum();
            assert_eq!(s, big(bi));
        }
    }
}

/// Independent check of the divisor product on a full-rank 3x5 instance:
/// count the residues of Z^3 modulo the column lattice by enumerating a
/// fundamental box [0, P)^3 (P annihilates the quotient) and testing
/// membership with the integer solver.
#[test]
fn pned_equals_lattice_index_brute_force() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
    let mut done = 0;
    while done < 5 {
        let m: Vec<Vec<i64>> = (0..3)
            .map(|_| (0..5).map(|_| rng.gen_range(-3..4)).collect())
            .collect();
        let nf = smith_normal_form(&m);
        if nf.rank < 3 || nf.pned > big(12) {
            continue;
        }
        let p: i64 = nf.pned.clone().try_into().unwrap();
        let mut members = 0u64;
        for x in 0..p {
            for y in 0..p {
                for z in 0..p {
                    if solve_integer(&m, &[x, y, z]).is_some() {
                        members += 1;
                    }
                }
            }
        }
        let total = (p as u64).pow(3);
        assert_eq!(total / members, u64::try_from(nf.pned.clone()).unwrap());
        assert_eq!(total % members, 0);
        done += 1;
    }
}
