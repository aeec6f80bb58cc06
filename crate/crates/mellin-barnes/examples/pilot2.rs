use std::time::Instant;
use angle_spaces::enumerate_taut_in_component;
use mellin_barnes::{build_integrand, mb_integral, PvQuadratureConfig};
use trimesh_io::load_triangulation;

fn main() {
    for name in ["4_1", "5_2", "m011", "m053"] {
        let (tri, a) = load_triangulation(&format!("fixtures/{name}.json")).unwrap();
        let taut = enumerate_taut_in_component(&tri, &a).unwrap();
        let cfg = PvQuadratureConfig::for_dim(tri.lstar.len());
        println!("{name}: {} taut structures, dim {}", taut.len(), tri.lstar.len());
        let mut sum = 0.0;
        for (i, t) in taut.iter().enumerate() {
            let ig = build_integrand(&tri, t, &a).unwrap();
            let t0 = Instant::now();
            let out = mb_integral(&ig, &cfg).unwrap();
            sum += out.value;
            println!(
                "  taut {i}: value {:+.6} spread {:.2e} conv {} ({:.1?})",
                out.value, out.spread, out.converged, t0.elapsed()
            );
        }
        println!("  beta = {sum:.6}");
    }
}
