//! Extreme rays of a pointed polyhedral cone `{d : aⱼ·d ≤ 0}` by the double
//! description method with the combinatorial adjacency test.

use crate::exactnum::{linalg::{independent_subset, primitive_direction}, solve_linear, QMatrix, QVector, Rational, SolveResult};

#[derive(Clone)]
struct Ray {
    dir: QVector,
    /// Bitset of processed constraints tight on this ray.
    zeros: Vec<u64>,
}

fn set_bit(bits: &mut [u64], i: usize) {
    bits[i / 64] |= 1 << (i % 64);
}

fn subset(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

fn and(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn popcount(a: &[u64]) -> usize {
    a.iter().map(|x| x.count_ones() as usize).sum()
}

/// Extreme rays of `{d : rows[j]·d ≤ 0 ∀j}`. The rows must span the space.
pub fn extreme_rays(rows: &[QVector]) -> Vec<QVector> {
    let n = rows[0].len();
    let words = rows.len().div_ceil(64);
    let basis = independent_subset(rows, n);
    assert_eq!(basis.len(), n, "cone is not pointed");
    let a = QMatrix::from_rows(&basis.iter().map(|&j| rows[j].clone()).collect::<Vec<_>>());
    let mut rays: Vec<Ray> = Vec::with_capacity(n);
    for k in 0..n {
        let mut rhs = QVector::zeros(n);
        rhs[k] = Rational::from_int(-1);
        let SolveResult::Unique(d) = solve_linear(&a, &rhs) else {
            unreachable!("independent rows")
        };
        let mut zeros = vec![0u64; words];
        for (kk, &j) in basis.iter().enumerate() {
            if kk != k {
                set_bit(&mut zeros, j);
            }
        }
        rays.push(Ray { dir: primitive_direction(&d), zeros });
    }
    for (j, row) in rows.iter().enumerate() {
        if basis.contains(&j) {
            continue;
        }
        let vals: Vec<Rational> = rays.iter().map(|r| row.dot(&r.dir)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        if pos.is_empty() {
            for (i, r) in rays.iter_mut().enumerate() {
                if vals[i].is_zero() {
                    set_bit(&mut r.zeros, j);
                }
            }
            continue;
        }
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        let mut next: Vec<Ray> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = and(&rays[p].zeros, &rays[q].zeros);
                if popcount(&common) + 2 < n {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .all(|r| r == p || r == q || !subset(&common, &rays[r].zeros));
                if !adjacent {
                    continue;
                }
                let mut dir = rays[q].dir.scale(&vals[p]);
                dir.axpy(&-&vals[q], &rays[p].dir);
                let mut zeros = common;
                set_bit(&mut zeros, j);
                next.push(Ray { dir: primitive_direction(&dir), zeros });
            }
        }
        for (i, r) in rays.iter().enumerate() {
            if !vals[i].is_positive() {
                let mut r = r.clone();
                if vals[i].is_zero() {
                    set_bit(&mut r.zeros, j);
                }
                next.push(r);
            }
        }
        rays = next;
    }
    let mut out: Vec<QVector> = rays.into_iter().map(|r| r.dir).collect();
    out.sort();
    out.dedup();
    out
}
