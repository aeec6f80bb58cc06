use std::time::Instant;

use angle_spaces::enumerate_taut_in_component;
use mellin_barnes::{
    barnes_pentagon_check, bifurcated_pentagon_check, build_integrand, mb_integral,
    PvQuadratureConfig,
};
use special_functions::Complex;
use trimesh_io::load_triangulation;

fn main() {
    let half = Complex::new(0.5, 0.0);
    let t0 = Instant::now();
    println!(
        "barnes sym: {:.3e} ({:.2?})",
        barnes_pentagon_check(half, half, half, half, half).unwrap(),
        t0.elapsed()
    );
    let sixth = Complex::new(1.0 / 6.0, 0.0);
    let t0 = Instant::now();
    println!(
        "bifurcated sym: {:.3e} ({:.2?})",
        bifurcated_pentagon_check([sixth; 3], [sixth; 3]).unwrap(),
        t0.elapsed()
    );

    for name in ["4_1", "5_2", "m011"] {
        let (tri, a) = load_triangulation(&format!("fixtures/{name}.json")).unwrap();
        let taut = enumerate_taut_in_component(&tri, &a).unwrap();
        println!("{name}: {} taut structures", taut.len());
        for (i, t) in taut.iter().enumerate() {
            let ig = build_integrand(&tri, t, &a).unwrap();
            let t0 = Instant::now();
            let out = mb_integral(&ig, &PvQuadratureConfig::default()).unwrap();
            println!(
                "  taut {i}: value {:.6} spread {:.2e} conv {} partials {:?} ({:.2?})",
                out.value,
                out.spread,
                out.converged,
                out.partials,
                t0.elapsed()
            );
        }
    }

    // 4_1 integrand shape: compare against B(1/3+s, 1/3+s)^2
    let (tri, a) = load_triangulation("fixtures/4_1.json").unwrap();
    let taut = enumerate_taut_in_component(&tri, &a).unwrap();
    let ig = build_integrand(&tri, &taut[0], &a).unwrap();
    for x in [0.3f64, 1.7] {
        let got = ig.value(&[x]).unwrap();
        let s = Complex::new(0.0, x);
        let third = Complex::new(1.0 / 3.0, 0.0);
        let b = special_functions::euler_beta(third + s, third + s).unwrap();
        let bm = special_functions::euler_beta(third - s, third - s).unwrap();
        println!("x={x}: got {got}, B+^2 {}, B+B- {}", b * b, b * bm);
    }
}
