//! Exact closest-point search by depth-first branch and bound.
//!
//! With Gram–Schmidt data `b*ⱼ` and `μᵢⱼ` of the rows, the squared distance
//! from `x = Σ yⱼ b*ⱼ` to `u·B` is `Σⱼ |b*ⱼ|² (yⱼ − uⱼ − Σ_{i>j} uᵢ μᵢⱼ)²`.
//! Coordinates are fixed from the last row down; a branch is abandoned once
//! its partial sum exceeds the best distance found, so ties survive.

use crate::exactnum::{QVector, Rational};

use super::generator::GeneratorMatrix;

/// All lattice points at minimal distance from a target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosestPoints {
    /// The minimal squared distance.
    pub dist2: Rational,
    /// Integer coordinates of every minimizer, sorted lexicographically.
    pub coords: Vec<Vec<i64>>,
}

/// Precomputed Gram–Schmidt data for repeated queries against one lattice.
#[derive(Clone, Debug)]
pub struct ClosestPointSearcher {
    basis: GeneratorMatrix,
    bstar: Vec<QVector>,
    bstar_norm2: Vec<Rational>,
    /// `mu[i][j]` for `j < i`.
    mu: Vec<Vec<Rational>>,
}

impl ClosestPointSearcher {
    pub fn new(basis: &GeneratorMatrix) -> Self {
        let n = basis.dim();
        let rows: Vec<QVector> = (0..n).map(|i| basis.row(i)).collect();
        let mut bstar: Vec<QVector> = Vec::with_capacity(n);
        let mut norms: Vec<Rational> = Vec::with_capacity(n);
        let mut mu = vec![vec![Rational::zero(); n]; n];
        for i in 0..n {
            let mut v = rows[i].clone();
            for j in 0..i {
                let m = rows[i].dot(&bstar[j]) / &norms[j];
                v.axpy(&-&m, &bstar[j]);
                mu[i][j] = m;
            }
            norms.push(v.norm2());
            bstar.push(v);
        }
        ClosestPointSearcher {
            basis: basis.clone(),
            bstar,
            bstar_norm2: norms,
            mu,
        }
    }

    pub fn basis(&self) -> &GeneratorMatrix {
        &self.basis
    }

    /// Every lattice point minimizing `|x − p|²`.
    pub fn closest(&self, x: &QVector) -> ClosestPoints {
        let n = self.basis.dim();
        let y: Vec<Rational> = (0..n)
            .map(|j| x.dot(&self.bstar[j]) / &self.bstar_norm2[j])
            .collect();
        let mut st = Search {
            s: self,
            y,
            u: vec![0; n],
            best: None,
            found: Vec::new(),
        };
        st.descend(n - 1, Rational::zero());
        let mut coords = st.found;
        coords.sort();
        coords.dedup();
        ClosestPoints {
            dist2: st.best.expect("a leaf is always reached"),
            coords,
        }
    }
}

struct Search<'a> {
    s: &'a ClosestPointSearcher,
    y: Vec<Rational>,
    u: Vec<i64>,
    best: Option<Rational>,
    found: Vec<Vec<i64>>,
}

impl Search<'_> {
    fn within(&self, d: &Rational) -> bool {
        self.best.as_ref().is_none_or(|b| d <= b)
    }

    fn visit(&mut self, j: usize, uj: i64, center: &Rational, partial: &Rational) -> bool {
        let diff = Rational::from_int(uj) - center;
        let d = partial + &self.s.bstar_norm2[j] * diff.square();
        if !self.within(&d) {
            return false;
        }
        self.u[j] = uj;
        if j == 0 {
            match &self.best {
                Some(b) if d == *b => self.found.push(self.u.clone()),
                _ => {
                    self.best = Some(d);
                    self.found.clear();
                    self.found.push(self.u.clone());
                }
            }
        } else {
            self.descend(j - 1, d);
        }
        true
    }

    fn descend(&mut self, j: usize, partial: Rational) {
        let n = self.u.len();
        let mut center = self.y[j].clone();
        for i in j + 1..n {
            if self.u[i] != 0 && !self.s.mu[i][j].is_zero() {
                center -= Rational::from_int(self.u[i]) * &self.s.mu[i][j];
            }
        }
        let start = i64::try_from(center.round_half_up()).expect("coordinate fits in i64");
        // Nearest first; on each side the partial distance grows monotonically.
        let up_first = Rational::from_int(start) <= center;
        let (first_dir, second_dir) = if up_first { (1i64, -1i64) } else { (-1, 1) };
        self.visit(j, start, &center, &partial);
        let mut next = [start + first_dir, start + second_dir];
        let mut alive = [true, true];
        let dirs = [first_dir, second_dir];
        while alive[0] || alive[1] {
            for side in 0..2 {
                if alive[side] {
                    alive[side] = self.visit(j, next[side], &center, &partial);
                    next[side] += dirs[side];
                }
            }
        }
    }
}

/// One-shot convenience wrapper around [`ClosestPointSearcher`].
pub fn closest_points(basis: &GeneratorMatrix, x: &QVector) -> ClosestPoints {
    ClosestPointSearcher::new(basis).closest(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::generator::ae9;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn integer_lattice_rounds() {
        let z = GeneratorMatrix::identity(9);
        let x = QVector(vec![q(1, 5); 9]);
        let c = closest_points(&z, &x);
        assert_eq!(c.coords, vec![vec![0; 9]]);
        assert_eq!(c.dist2, q(9, 25));
    }

    #[test]
    fn ties_are_all_returned() {
        let z = GeneratorMatrix::identity(2);
        let c = closest_points(&z, &QVector(vec![q(1, 2), q(1, 2)]));
        assert_eq!(c.coords, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn ae9_small_offset() {
        let b = ae9(&q(4, 7)).unwrap();
        let mut x = QVector::zeros(9);
        x[0] = q(1, 10);
        assert_eq!(closest_points(&b, &x).coords, vec![vec![0; 9]]);
    }
}
