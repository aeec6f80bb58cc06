use std::time::Instant;

use angle_spaces::enumerate_taut_in_component;
use mellin_barnes::quad::{half_space_sums, scaled_rule, RadialWindow};
use mellin_barnes::build_integrand;
use special_functions::Complex;
use trimesh_io::load_triangulation;

fn main() {
    let (tri, a) = load_triangulation("fixtures/m053.json").unwrap();
    let taut = enumerate_taut_in_component(&tri, &a).unwrap();
    let rmax = 30.0;
    let n = 1440usize;
    let dim = tri.lstar.len();
    let (nodes, weights) = scaled_rule(n, -rmax, rmax);
    let starts: Vec<f64> = (1..=9).map(|k| 3.0 * k as f64).collect();
    let mut windows = Vec::new();
    for &r0 in &starts {
        if r0 + 3.0 <= rmax {
            windows.push(RadialWindow::Taper(r0, r0 + 3.0));
        }
    }
    for &r0 in &starts {
        windows.push(RadialWindow::Taper(r0, rmax));
    }
    let norm = 2.0 * (2.0 * std::f64::consts::PI).powi(-(dim as i32));
    for i in [2usize, 4] {
        let ig = build_integrand(&tri, &taut[i], &a).unwrap();
        let f = |x: &[f64]| -> Complex {
            ig.log_value(x)
                .map(|l| l.exp())
                .unwrap_or_else(|_| Complex::new(f64::NAN, f64::NAN))
        };
        let t0 = Instant::now();
        let sums = half_space_sums(&f, &nodes, &weights, &windows, dim);
        println!("taut {i} ({:.0?})", t0.elapsed());
        let nn = starts.len() - 1;
        for (k, &r0) in starts.iter().enumerate() {
            if k < nn {
                println!(
                    "  narrow [{:>4.1},{:>4.1}]: {:+.6}",
                    r0,
                    r0 + 3.0,
                    norm * sums[k].re
                );
            }
        }
        for (k, &r0) in starts.iter().enumerate() {
            println!("  wide [{:>4.1},30]: {:+.6}", r0, norm * sums[nn + k].re);
        }
    }
}
