use std::time::Instant;
use angle_spaces::enumerate_taut_in_component;
use mellin_barnes::{build_integrand, mb_integral, PvQuadratureConfig};
use trimesh_io::load_triangulation;

fn main() {
    let (tri, a) = load_triangulation("fixtures/m053.json").unwrap();
    let taut = enumerate_taut_in_component(&tri, &a).unwrap();
    let cfg = PvQuadratureConfig {
        radii: vec![3.0, 6.5, 10.0, 14.0],
        nodes_per_axis: 1000,
        window: 3,
        spread_tolerance: 5e-3,
    };
    let mut sum = 0.0;
    for (i, t) in taut.iter().enumerate() {
        let ig = build_integrand(&tri, t, &a).unwrap();
        let t0 = Instant::now();
        let out = mb_integral(&ig, &cfg).unwrap();
        sum += out.value;
        println!(
            "taut {i}: value {:+.6} spread {:.2e} conv {} ({:.1?})",
            out.value, out.spread, out.converged, t0.elapsed()
        );
    }
    println!("beta = {sum:.6}");
}
