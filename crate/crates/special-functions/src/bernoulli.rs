use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::Complex;

const MAX_B: usize = 64;

/// Bernoulli numbers B_0..B_MAX computed once, exactly, then rounded.
fn bernoulli_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut b: Vec<BigRational> = Vec::with_capacity(MAX_B + 1);
        b.push(BigRational::one());
        for n in 1..=MAX_B {
            // B_n = -1/(n+1) * sum_{k<n} C(n+1, k) B_k
            let mut acc = BigRational::zero();
            let mut binom = BigInt::one(); // C(n+1, 0)
            for (k, bk) in b.iter().enumerate() {
                acc += BigRational::from(binom.clone()) * bk;
                binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
            }
            b.push(-acc / BigRational::from(BigInt::from(n + 1)));
        }
        b.iter().map(|x| x.to_f64().unwrap()).collect()
    })
}

/// B_k, zero for odd k >= 3.
pub fn bernoulli_number(k: usize) -> f64 {
    assert!(k <= MAX_B, "Bernoulli table bound exceeded");
    bernoulli_table()[k]
}

/// Bernoulli polynomial B_k(a) = sum_j C(k,j) B_j a^(k-j).
pub fn bernoulli_poly(k: usize, a: Complex) -> Complex {
    assert!(k <= MAX_B, "Bernoulli table bound exceeded");
    let b = bernoulli_table();
    let mut sum = Complex::new(0.0, 0.0);
    let mut binom = 1.0f64;
    // descending powers: j = 0..=k, power a^(k-j)
    for j in 0..=k {
        sum += binom * b[j] * a.powu((k - j) as u32);
        binom = binom * (k - j) as f64 / (j + 1) as f64;
    }
    sum
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}
