//! Dense exact vectors and matrices over the rationals.

use std::fmt;
use std::ops::{Deref, DerefMut, Index, IndexMut};

use serde::{Deserialize, Serialize};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::rational::Rational;
use crate::error::{LamiqError, Result};

/// A dense rational vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct QVector(pub Vec<Rational>);

impl QVector {
    pub fn zeros(n: usize) -> Self {
        QVector(vec![Rational::zero(); n])
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        QVector(xs.iter().map(|&x| Rational::from_int(x)).collect())
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn dot(&self, other: &QVector) -> Rational {
        debug_assert_eq!(self.len(), other.len());
        let mut acc = Rational::zero();
        for (a, b) in self.iter().zip(other.iter()) {
            if !a.is_zero() && !b.is_zero() {
                acc += a * b;
            }
        }
        acc
    }

    pub fn norm2(&self) -> Rational {
        self.dot(self)
    }

    pub fn add(&self, other: &QVector) -> QVector {
        QVector(self.iter().zip(other.iter()).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &QVector) -> QVector {
        QVector(self.iter().zip(other.iter()).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Rational) -> QVector {
        QVector(self.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> QVector {
        QVector(self.iter().map(|a| -a).collect())
    }

    /// `self += s·other`
    pub fn axpy(&mut self, s: &Rational, other: &QVector) {
        if s.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(other.iter()) {
            if !b.is_zero() {
                *a += s * b;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.iter().all(|x| x.is_zero())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.iter().map(|x| x.to_f64()).collect()
    }
}

impl Deref for QVector {
    type Target = Vec<Rational>;
    fn deref(&self) -> &Vec<Rational> {
        &self.0
    }
}

impl DerefMut for QVector {
    fn deref_mut(&mut self) -> &mut Vec<Rational> {
        &mut self.0
    }
}

impl fmt::Debug for QVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A dense row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

/// Serialized as a list of rows.
impl Serialize for QMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(self.row_slice(i))?;
        }
        seq.end()
    }
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: &[QVector]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().cloned());
        }
        QMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> QVector {
        QVector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn row_slice(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows_vec(&self) -> Vec<QVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn col(&self, j: usize) -> QVector {
        QVector((0..self.rows).map(|i| self[(i, j)].clone()).collect())
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let p = a * b;
                        out[(i, j)] += p;
                    }
                }
            }
        }
        out
    }

    /// `M·v` (v as a column).
    pub fn mul_vec(&self, v: &QVector) -> QVector {
        QVector((0..self.rows).map(|i| QVector(self.row_slice(i).to_vec()).dot(v)).collect())
    }

    /// `v·M` (v as a row), the lattice-point map `u ↦ u·B`.
    pub fn vec_mul(&self, v: &QVector) -> QVector {
        assert_eq!(v.len(), self.rows);
        let mut out = QVector::zeros(self.cols);
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            for j in 0..self.cols {
                let b = &self[(i, j)];
                if !b.is_zero() {
                    out[j] += vi * b;
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn scale(&self, s: &Rational) -> QMatrix {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    /// Gram matrix `M·Mᵀ` of the rows.
    pub fn gram(&self) -> QMatrix {
        let rows = self.rows_vec();
        let mut g = QMatrix::zeros(self.rows, self.rows);
        for i in 0..self.rows {
            for j in 0..=i {
                let d = rows[i].dot(&rows[j]);
                g[(j, i)] = d.clone();
                g[(i, j)] = d;
            }
        }
        g
    }

    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Rational::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !a[(i, k)].is_zero()) else {
                return Rational::zero();
            };
            if p != k {
                a.swap_rows(p, k);
                det = -det;
            }
            let pivot = a[(k, k)].clone();
            det *= &pivot;
            let inv = pivot.recip();
            for i in k + 1..n {
                if a[(i, k)].is_zero() {
                    continue;
                }
                let f = &a[(i, k)] * &inv;
                for j in k + 1..n {
                    if !a[(k, j)].is_zero() {
                        let t = &f * &a[(k, j)];
                        a[(i, j)] -= t;
                    }
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        match solve_linear_multi(self, &QMatrix::identity(n)) {
            SolveResult::Unique(x) => Some(x),
            _ => None,
        }
    }

    pub fn rank(&self) -> usize {
        echelon_rank(self.clone())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

fn echelon_rank(mut a: QMatrix) -> usize {
    let (m, n) = (a.rows, a.cols);
    let mut rank = 0;
    for col in 0..n {
        let Some(p) = (rank..m).find(|&i| !a[(i, col)].is_zero()) else {
            continue;
        };
        a.swap_rows(p, rank);
        let inv = a[(rank, col)].recip();
        for i in rank + 1..m {
            if a[(i, col)].is_zero() {
                continue;
            }
            let f = &a[(i, col)] * &inv;
            for j in col..n {
                if !a[(rank, j)].is_zero() {
                    let t = &f * &a[(rank, j)];
                    a[(i, j)] -= t;
                }
            }
        }
        rank += 1;
        if rank == m {
            break;
        }
    }
    rank
}

/// Outcome of an exact linear solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveResult<T> {
    Unique(T),
    /// Consistent with a solution space of dimension `cols - rank`.
    Underdetermined { rank: usize },
    /// No solution.
    Inconsistent { rank: usize },
}

/// Solves `A·x = b` by Gaussian elimination with full pivoting.
pub fn solve_linear(a: &QMatrix, b: &QVector) -> SolveResult<QVector> {
    assert_eq!(a.nrows(), b.len());
    let rhs = QMatrix::from_rows(&b.iter().map(|x| QVector(vec![x.clone()])).collect::<Vec<_>>());
    let rhs = if b.is_empty() { QMatrix::zeros(0, 1) } else { rhs };
    match solve_linear_multi(a, &rhs) {
        SolveResult::Unique(x) => SolveResult::Unique(x.col(0)),
        SolveResult::Underdetermined { rank } => SolveResult::Underdetermined { rank },
        SolveResult::Inconsistent { rank } => SolveResult::Inconsistent { rank },
    }
}

/// Solves `A·X = B` for several right-hand sides at once.
pub fn solve_linear_multi(a: &QMatrix, b: &QMatrix) -> SolveResult<QMatrix> {
    let (m, n) = (a.nrows(), a.ncols());
    let k = b.ncols();
    assert_eq!(b.nrows(), m);
    let mut aug = QMatrix::zeros(m, n + k);
    for i in 0..m {
        for j in 0..n {
            aug[(i, j)] = a[(i, j)].clone();
        }
        for j in 0..k {
            aug[(i, n + j)] = b[(i, j)].clone();
        }
    }
    // Column permutation of the unknowns introduced by full pivoting.
    let mut perm: Vec<usize> = (0..n).collect();
    let mut rank = 0;
    while rank < m.min(n) {
        // Full pivoting: any nonzero entry in the remaining block. Prefer the
        // smallest-bit pivot to limit coefficient growth; never zero.
        let mut best: Option<(usize, usize, u64)> = None;
        for i in rank..m {
            for j in rank..n {
                let v = &aug[(i, j)];
                if !v.is_zero() {
                    let bits = v.bits();
                    if best.is_none_or(|(_, _, b)| bits < b) {
                        best = Some((i, j, bits));
                    }
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        aug.swap_rows(rank, pi);
        aug.swap_cols(rank, pj);
        perm.swap(rank, pj);
        let inv = aug[(rank, rank)].recip();
        for j in rank..n + k {
            if !aug[(rank, j)].is_zero() {
                let t = &aug[(rank, j)] * &inv;
                aug[(rank, j)] = t;
            }
        }
        for i in 0..m {
            if i == rank || aug[(i, rank)].is_zero() {
                continue;
            }
            let f = aug[(i, rank)].clone();
            for j in rank..n + k {
                if !aug[(rank, j)].is_zero() {
                    let t = &f * &aug[(rank, j)];
                    aug[(i, j)] -= t;
                }
            }
        }
        rank += 1;
    }
    for i in rank..m {
        if (n..n + k).any(|j| !aug[(i, j)].is_zero()) {
            return SolveResult::Inconsistent { rank };
        }
    }
    if rank < n {
        return SolveResult::Underdetermined { rank };
    }
    let mut x = QMatrix::zeros(n, k);
    for (r, &var) in perm.iter().enumerate() {
        for j in 0..k {
            x[(var, j)] = aug[(r, n + j)].clone();
        }
    }
    SolveResult::Unique(x)
}

/// Gram determinant `det[vᵢ·vⱼ]`; 1 for an empty list.
pub fn gram_determinant(vs: &[QVector]) -> Rational {
    if vs.is_empty() {
        return Rational::one();
    }
    QMatrix::from_rows(vs).gram().determinant()
}

/// Greedily picks indices of linearly independent vectors, in order.
pub fn independent_subset(vs: &[QVector], limit: usize) -> Vec<usize> {
    let mut basis: Vec<(usize, QVector)> = Vec::new();
    let mut picked = Vec::new();
    for (idx, v) in vs.iter().enumerate() {
        if picked.len() >= limit {
            break;
        }
        let mut r = v.clone();
        for (p, b) in &basis {
            if !r[*p].is_zero() {
                let f = r[*p].clone();
                r.axpy(&-f, b);
            }
        }
        if let Some(p) = r.iter().position(|x| !x.is_zero()) {
            let inv = r[p].recip();
            let r = r.scale(&inv);
            for (_, b) in basis.iter_mut() {
                if !b[p].is_zero() {
                    let f = b[p].clone();
                    b.axpy(&-f, &r);
                }
            }
            basis.push((p, r));
            picked.push(idx);
        }
    }
    picked
}

/// The primitive integer vector on the ray through `v`, or `v` if it is zero.
pub fn primitive_direction(v: &QVector) -> QVector {
    use num_integer::Integer;
    let mut lcm = BigInt::one();
    for x in v.iter() {
        lcm = lcm.lcm(&x.denom());
    }
    let mut g = BigInt::zero();
    for x in v.iter() {
        g = g.gcd(&(x.numer() * (&lcm / x.denom())));
    }
    if g.is_zero() {
        return v.clone();
    }
    v.scale(&Rational::from_bigints(lcm, g))
}

/// Parses a rational row from exact strings.
pub fn parse_qvector(items: &[String]) -> Result<QVector> {
    items
        .iter()
        .map(|s| s.parse::<Rational>())
        .collect::<Result<Vec<_>>>()
        .map(QVector)
}

pub fn require_square(m: &QMatrix) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(LamiqError::InvalidInput(format!(
            "expected a square matrix, got {}×{}",
            m.nrows(),
            m.ncols()
        )));
    }
    Ok(())
}
