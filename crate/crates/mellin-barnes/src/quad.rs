//! Gauss-Legendre nodes and the ball-masked tensor quadrature.

use special_functions::Complex;

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
/// by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 2);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // evaluate P_n and P_n' at x via the three-term recurrence
            let (mut p0, mut p1) = (1.0f64, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    // the cosine start enumerates roots right to left
    nodes.reverse();
    weights.reverse();
    (nodes, weights)
}

/// A radial window applied to a grid point at distance rho from the origin.
#[derive(Debug, Clone, Copy)]
pub enum RadialWindow {
    /// Sharp indicator of the ball of this radius.
    Ball(f64),
    /// 1 inside the first radius, smooth roll-off to 0 at the second; the
    /// smoothed average of ball integrals over the window.
    Taper(f64, f64),
}

/// C-infinity step from 1 at t=0 to 0 at t=1. For oscillatory radial tails
/// with asymptotically constant frequency, windowing with a smooth step
/// suppresses the truncation oscillation beyond any power of the window
/// width, unlike a sharp or merely C^1 cutoff.
fn smooth_step_down(t: f64) -> f64 {
    if t <= 0.0 {
        return 1.0;
    }
    if t >= 1.0 {
        return 0.0;
    }
    let f = |u: f64| (-1.0 / u).exp();
    f(1.0 - t) / (f(t) + f(1.0 - t))
}

impl RadialWindow {
    fn weight(&self, rho: f64) -> f64 {
        match *self {
            RadialWindow::Ball(r) => {
                if rho <= r {
                    1.0
                } else {
                    0.0
                }
            }
            RadialWindow::Taper(r0, r1) => {
                if rho <= r0 {
                    1.0
                } else if rho >= r1 {
                    0.0
                } else {
                    smooth_step_down((rho - r0) / (r1 - r0))
                }
            }
        }
    }

    pub fn outer_radius(&self) -> f64 {
        match *self {
            RadialWindow::Ball(r) => r,
            RadialWindow::Taper(_, r1) => r1,
        }
    }
}

/// One pass over the tensor grid restricted to the half-space x_0 > 0,
/// accumulating sum of w(x) window_k(|x|) f(x) for every window at once.
/// The full-space value of a conjugation-symmetric integrand is twice the
/// real part of each accumulator.
///
/// Work splits over the first axis; the per-slice order and the pairwise
/// reduction are fixed, so the result is identical for any worker count.
pub fn half_space_sums<F>(
    f: &F,
    nodes: &[f64],
    weights: &[f64],
    windows: &[RadialWindow],
    dim: usize,
) -> Vec<Complex>
where
    F: Fn(&[f64]) -> Complex + Sync,
{
    let rmax = windows
        .iter()
        .map(|w| w.outer_radius())
        .fold(0.0f64, f64::max);
    let positive: Vec<usize> = (0..nodes.len()).filter(|&i| nodes[i] > 0.0).collect();
    let slice = |&i0: &usize| -> Vec<Complex> {
        let mut x = vec![0.0f64; dim];
        let mut idx = vec![0usize; dim];
        x[0] = nodes[i0];
        let w0 = weights[i0];
        let mut acc = vec![Complex::new(0.0, 0.0); windows.len()];
        let deposit = |x: &[f64], w: f64, acc: &mut [Complex]| {
            let rho = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            if rho > rmax {
                return;
            }
            let v = w * f(x);
            for (a, win) in acc.iter_mut().zip(windows) {
                let g = win.weight(rho);
                if g > 0.0 {
                    *a += g * v;
                }
            }
        };
        if dim == 1 {
            deposit(&x, w0, &mut acc);
            return acc;
        }
        'grid: loop {
            let mut w = w0;
            for j in 1..dim {
                x[j] = nodes[idx[j]];
                w *= weights[idx[j]];
            }
            deposit(&x, w, &mut acc);
            // odometer over axes 1..dim
            let mut j = dim - 1;
            loop {
                idx[j] += 1;
                if idx[j] < nodes.len() {
                    break;
                }
                idx[j] = 0;
                if j == 1 {
                    break 'grid;
                }
                j -= 1;
            }
        }
        acc
    };
    #[cfg(feature = "parallel")]
    let partials: Vec<Vec<Complex>> = {
        use rayon::prelude::*;
        positive.par_iter().map(slice).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let partials: Vec<Vec<Complex>> = positive.iter().map(slice).collect();
    pairwise_vec(partials, windows.len())
}

fn pairwise_vec(mut v: Vec<Vec<Complex>>, width: usize) -> Vec<Complex> {
    if v.is_empty() {
        return vec![Complex::new(0.0, 0.0); width];
    }
    while v.len() > 1 {
        v = v
            .chunks(2)
            .map(|p| {
                if p.len() == 2 {
                    p[0].iter().zip(&p[1]).map(|(a, b)| a + b).collect()
                } else {
                    p[0].clone()
                }
            })
            .collect();
    }
    v.pop().unwrap()
}

/// Scale a rule from [-1, 1] to [-r, r] (or any [a, b]).
pub fn scaled_rule(n: usize, a: f64, b: f64) -> (Vec<f64>, Vec<f64>) {
    let (nodes, weights) = gauss_legendre(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    (
        nodes.iter().map(|t| mid + half * t).collect(),
        weights.iter().map(|w| half * w).collect(),
    )
}
