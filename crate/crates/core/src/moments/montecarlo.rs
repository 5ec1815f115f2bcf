//! Seeded Monte Carlo estimate of `G` with a floating-point decoder.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::lattice::GeneratorMatrix;

/// Samples per independently seeded stream; fixed so results do not depend on the thread count.
const CHUNK: usize = 1 << 14;

#[derive(Clone, Debug, Serialize)]
pub struct MonteCarloEstimate {
    pub samples: usize,
    pub g: f64,
    pub stderr: f64,
}

/// Schnorr–Euchner closest-point search in `f64`.
pub struct FloatDecoder {
    n: usize,
    rows: Vec<Vec<f64>>,
    /// Gram–Schmidt coefficients `mu[j][k]` for `j > k`.
    mu: Vec<Vec<f64>>,
    bstar: Vec<Vec<f64>>,
    bnorm: Vec<f64>,
}

impl FloatDecoder {
    pub fn new(b: &GeneratorMatrix) -> Self {
        let rows = b.to_f64();
        let n = rows.len();
        let mut bstar: Vec<Vec<f64>> = Vec::with_capacity(n);
        let mut mu = vec![vec![0.0; n]; n];
        let mut bnorm = Vec::with_capacity(n);
        for j in 0..n {
            let mut v = rows[j].clone();
            for k in 0..j {
                let m = dot(&rows[j], &bstar[k]) / bnorm[k];
                mu[j][k] = m;
                for (x, y) in v.iter_mut().zip(&bstar[k]) {
                    *x -= m * y;
                }
            }
            bnorm.push(dot(&v, &v));
            bstar.push(v);
        }
        FloatDecoder { n, rows, mu, bstar, bnorm }
    }

    /// Squared distance from `x` to the nearest lattice point.
    pub fn distance2(&self, x: &[f64]) -> f64 {
        let n = self.n;
        let y: Vec<f64> = (0..n).map(|k| dot(x, &self.bstar[k]) / self.bnorm[k]).collect();
        let mut u = vec![0i64; n];
        let mut best = f64::INFINITY;
        self.search(n, 0.0, &y, &mut u, &mut best);
        best
    }

    fn search(&self, level: usize, partial: f64, y: &[f64], u: &mut [i64], best: &mut f64) {
        if level == 0 {
            if partial < *best {
                *best = partial;
            }
            return;
        }
        let k = level - 1;
        let mut c = y[k];
        for j in level..self.n {
            c -= u[j] as f64 * self.mu[j][k];
        }
        let start = c.round();
        let dir = if c >= start { 1.0 } else { -1.0 };
        // Candidates in nondecreasing distance from c: start, start±1, start∓1, start±2, …
        for step in 0i64.. {
            let off = if step % 2 == 1 { (step + 1) / 2 } else { -(step / 2) } as f64;
            let cand = start + dir * off;
            let d = c - cand;
            let p = partial + self.bnorm[k] * d * d;
            if p >= *best {
                return;
            }
            u[k] = cand as i64;
            self.search(k, p, y, u, best);
        }
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Estimates `G` from `samples` uniform points in the fundamental parallelepiped.
pub fn monte_carlo_g(b: &GeneratorMatrix, samples: usize, seed: u64) -> MonteCarloEstimate {
    let dec = FloatDecoder::new(b);
    let n = dec.n;
    let volume = b.determinant().abs().to_f64();
    let chunks = samples.div_ceil(CHUNK);
    let sums: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let count = CHUNK.min(samples - c * CHUNK);
            let mut s = 0.0;
            let mut s2 = 0.0;
            let mut x = vec![0.0; n];
            for _ in 0..count {
                x.iter_mut().for_each(|v| *v = 0.0);
                for row in &dec.rows {
                    let t: f64 = rng.gen();
                    for (xi, r) in x.iter_mut().zip(row) {
                        *xi += t * r;
                    }
                }
                let e = dec.distance2(&x);
                s += e;
                s2 += e * e;
            }
            (s, s2)
        })
        .collect();
    let (s, s2) = sums.iter().fold((0.0, 0.0), |(a, b), (c, d)| (a + c, b + d));
    let m = samples as f64;
    let mean = s / m;
    let var = (s2 / m - mean * mean).max(0.0) * m / (m - 1.0);
    let norm = n as f64 * volume.powf(2.0 / n as f64);
    MonteCarloEstimate {
        samples,
        g: mean / norm,
        stderr: (var / m).sqrt() / norm,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{QVector, Rational};
    use crate::lattice::closest_points;

    #[test]
    fn square_lattice() {
        let e = monte_carlo_g(&GeneratorMatrix::identity(2), 200_000, 1);
        assert!((e.g - 1.0 / 12.0).abs() < 5.0 * e.stderr, "{e:?}");
    }

    #[test]
    fn decoder_matches_exact_search() {
        let b = crate::lattice::ae9(&Rational::new(4, 7)).unwrap();
        let dec = FloatDecoder::new(&b);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let x: Vec<i64> = (0..9).map(|_| rng.gen_range(-3000..3000)).collect();
            let q = QVector(x.iter().map(|&v| Rational::new(v, 1000)).collect());
            let exact = closest_points(&b, &q).dist2.to_f64();
            let xf: Vec<f64> = x.iter().map(|&v| v as f64 / 1000.0).collect();
            assert!((dec.distance2(&xf) - exact).abs() < 1e-9);
        }
    }
}
