//! Log-branch Newton solves from seeds.

use std::f64::consts::PI;

use geometry_solver::{log_branch_targets, newton_gluing, solve_geometric, SolveError};
use special_functions::Complex;
use trimesh_io::{load_triangulation, AngleAssignment, TriangulationData};

fn fixture(name: &str) -> (TriangulationData, AngleAssignment) {
    let path = format!("{}/../../fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
    load_triangulation(&path).unwrap()
}

fn seeds() -> serde_json::Value {
    let path = format!(
        "{}/../../fixtures/seeds.json",
        env!("CARGO_MANIFEST_DIR")
    );
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn logs_from_shapes(z: &[Complex]) -> Vec<Complex> {
    let n = z.len();
    let one = Complex::new(1.0, 0.0);
    let mut zlog = vec![Complex::new(0.0, 0.0); 3 * n];
    for t in 0..n {
        zlog[t] = z[t].ln();
        zlog[n + t] = (one / (one - z[t])).ln();
        zlog[2 * n + t] = Complex::new(0.0, PI) - zlog[t] - zlog[n + t];
    }
    zlog
}

#[test]
fn geometric_seed_is_a_fixed_point() {
    let (tri, a) = fixture("4_1");
    let (sol, _) = solve_geometric(&tri, &a).unwrap();
    let again = newton_gluing(&tri, &sol.zlog, &vec![2; tri.n], &[0, 0]).unwrap();
    for (x, y) in sol.z.iter().zip(&again.z) {
        assert!((x - y).norm() < 1e-12);
    }
    assert!(again.residual < 1e-12);
}

#[test]
fn deformed_solutions_from_seeds() {
    let seeds = seeds();
    for name in ["m032", "m053"] {
        let (tri, _) = fixture(name);
        let n = tri.n;
        let z0: Vec<Complex> = (0..n)
            .map(|t| {
                Complex::new(
                    seeds[name]["z"][t][0].as_f64().unwrap(),
                    seeds[name]["z"][t][1].as_f64().unwrap(),
                )
            })
            .collect();
        let zlog = logs_from_shapes(&z0);
        let (c, d) = log_branch_targets(&tri, &zlog).unwrap();
        let sol = newton_gluing(&tri, &zlog, &c, &d).unwrap();
        assert!(sol.residual < 1e-12, "{name}");
        for (got, want) in sol.primary().iter().zip(&z0) {
            assert!((got - want).norm() < 1e-9, "{name}: {got} vs {want}");
        }
        let n_plus = sol.primary().iter().filter(|z| z.im > 0.0).count();
        assert_eq!(n_plus, seeds[name]["n_plus"].as_u64().unwrap() as usize);
        assert_eq!(
            n - n_plus,
            seeds[name]["n_minus"].as_u64().unwrap() as usize
        );
    }
}

#[test]
fn hopeless_seed_reports_an_error() {
    let (tri, _) = fixture("4_1");
    // branch targets no shape can reach from these seeds
    let z0 = vec![Complex::new(40.0, 0.7), Complex::new(-33.0, 0.1)];
    let zlog = logs_from_shapes(&z0);
    let res = newton_gluing(&tri, &zlog, &[100, 2], &[0, 0]);
    assert!(
        matches!(
            res,
            Err(SolveError::NoConvergence { .. })
                | Err(SolveError::ShapeCollapse(_))
                | Err(SolveError::SingularSystem)
                | Err(SolveError::NotShapeSolution(_))
        ),
        "expected an error"
    );
}
