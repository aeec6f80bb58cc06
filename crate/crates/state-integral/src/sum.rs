use special_functions::Complex;

const CHUNK: u128 = 4096;

/// Neumaier-compensated accumulator for one chunk.
#[derive(Clone, Copy, Default)]
struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    #[inline]
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        self.comp += if self.sum.abs() >= x.abs() {
            (self.sum - t) + x
        } else {
            (x - t) + self.sum
        };
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum + self.comp
    }
}

/// Table index of grid point `digits` at quad `q`: sum_j (d_j + 1) l_j(q)
/// reduced mod S.
fn indices_at(rows: &[Vec<i64>], digits: &[u64], s: usize, idx: &mut [i64]) {
    for (q, slot) in idx.iter_mut().enumerate() {
        let mut acc: i64 = 0;
        for (d, row) in digits.iter().zip(rows) {
            acc += (*d as i64 + 1) * row[q];
        }
        *slot = acc.rem_euclid(s as i64);
    }
}

fn chunk_sum(
    table: &[Vec<Complex>],
    rows: &[Vec<i64>],
    s: usize,
    start: u128,
    len: u128,
) -> Complex {
    let dim = rows.len();
    let nq = table.len();
    // decode the starting multi-index, last digit fastest
    let mut digits = vec![0u64; dim];
    let mut rem = start;
    for j in (0..dim).rev() {
        digits[j] = (rem % s as u128) as u64;
        rem /= s as u128;
    }
    let mut idx = vec![0i64; nq];
    indices_at(rows, &digits, s, &mut idx);
    let last = dim - 1;
    let mut re = Kahan::default();
    let mut im = Kahan::default();
    for step in 0..len {
        if step > 0 {
            // advance the fastest digit; recompute on (rare) carries
            digits[last] += 1;
            if digits[last] == s as u64 {
                digits[last] = 0;
                let mut j = last;
                loop {
                    if j == 0 {
                        break;
                    }
                    j -= 1;
                    digits[j] += 1;
                    if digits[j] < s as u64 {
                        break;
                    }
                    digits[j] = 0;
                }
                indices_at(rows, &digits, s, &mut idx);
            } else {
                for (q, slot) in idx.iter_mut().enumerate() {
                    *slot = (*slot + rows[last][q]).rem_euclid(s as i64);
                }
            }
        }
        let mut prod = Complex::new(1.0, 0.0);
        for (col, &i) in table.iter().zip(idx.iter()) {
            prod *= col[i as usize];
        }
        re.add(prod.re);
        im.add(prod.im);
    }
    Complex::new(re.value(), im.value())
}

fn pairwise(mut v: Vec<Complex>) -> Complex {
    if v.is_empty() {
        return Complex::new(0.0, 0.0);
    }
    while v.len() > 1 {
        v = v
            .chunks(2)
            .map(|p| if p.len() == 2 { p[0] + p[1] } else { p[0] })
            .collect();
    }
    v[0]
}

/// Full grid sum over {1..S}^dim with fixed chunking and a canonical
/// pairwise reduction, identical for any worker count.
pub fn grid_sum(table: &[Vec<Complex>], rows: &[Vec<i64>], s: usize) -> Complex {
    let dim = rows.len() as u32;
    let total = (s as u128).pow(dim);
    let chunks = total.div_ceil(CHUNK);
    let bounds: Vec<(u128, u128)> = (0..chunks)
        .map(|c| {
            let start = c * CHUNK;
            (start, CHUNK.min(total - start))
        })
        .collect();
    #[cfg(feature = "parallel")]
    let partials: Vec<Complex> = {
        use rayon::prelude::*;
        bounds
            .par_iter()
            .map(|&(start, len)| chunk_sum(table, rows, s, start, len))
            .collect()
    };
    #[cfg(not(feature = "parallel"))]
    let partials: Vec<Complex> = bounds
        .iter()
        .map(|&(start, len)| chunk_sum(table, rows, s, start, len))
        .collect();
    pairwise(partials)
}
