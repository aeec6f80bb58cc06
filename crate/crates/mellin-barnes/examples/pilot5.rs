use angle_spaces::enumerate_taut_in_component;
use mellin_barnes::build_integrand;
use special_functions::{euler_beta, Complex};
use trimesh_io::load_triangulation;

fn main() {
    let (tri, a) = load_triangulation("fixtures/m011.json").unwrap();
    let taut = enumerate_taut_in_component(&tri, &a).unwrap();
    println!("lstar: {:?}", tri.lstar);
    println!("a: {:?}", a.a);
    for (i, t) in taut.iter().enumerate() {
        let ig = build_integrand(&tri, t, &a).unwrap();
        println!("taut {i} signs {:?}", t.signs);
        for p in &ig.pairs {
            println!("  pair a=({:.4},{:.4}) l=({:?},{:?})", p[0].a, p[1].a, p[0].l, p[1].l);
        }
        let x = [0.37, -0.81];
        let got = ig.value(&x).unwrap();
        // printed omega_1 integrand: B^2(3/16 - s1, 9/16 + 2 s1 - s2) B(1/8 + 2 s2, 3/4 + s1 - s2)
        let s1 = Complex::new(0.0, x[0]);
        let s2 = Complex::new(0.0, x[1]);
        let b1 = euler_beta(
            Complex::new(3.0 / 16.0, 0.0) - s1,
            Complex::new(9.0 / 16.0, 0.0) + 2.0 * s1 - s2,
        )
        .unwrap();
        let b2 = euler_beta(
            Complex::new(1.0 / 8.0, 0.0) + 2.0 * s2,
            Complex::new(3.0 / 4.0, 0.0) + s1 - s2,
        )
        .unwrap();
        println!("  value {got}  printed-form {}", b1 * b1 * b2);
    }
}
