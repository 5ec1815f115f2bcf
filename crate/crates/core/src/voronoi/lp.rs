//! Exact simplex method over `{x : aⱼ·x ≤ bⱼ}` with the origin strictly
//! feasible.
//!
//! A starting vertex is reached by walking from the origin along the
//! objective projected onto the planes already hit. The simplex phase then
//! moves between bases of `n` tight constraints, using Bland's rule for both
//! the leaving and the entering constraint.

use crate::error::{LamiqError, Result};
use crate::exactnum::{solve_linear, QMatrix, QVector, Rational, SolveResult};

/// An optimal vertex and a basis of `n` independent tight constraints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpVertex {
    pub x: QVector,
    pub basis: Vec<usize>,
}

/// One half-space `a·x ≤ b`.
pub trait Constraint {
    fn normal(&self) -> &QVector;
    fn bound(&self) -> &Rational;
}

/// Iteration cap guarding against an implementation fault; Bland's rule terminates.
const MAX_PIVOTS: usize = 1_000_000;

fn rows_matrix<C: Constraint>(cons: &[C], idx: &[usize]) -> QMatrix {
    QMatrix::from_rows(&idx.iter().map(|&j| cons[j].normal().clone()).collect::<Vec<_>>())
}

/// Orthogonal projection of `c` onto the null space of the rows `idx`.
fn project_out<C: Constraint>(cons: &[C], idx: &[usize], c: &QVector) -> QVector {
    if idx.is_empty() {
        return c.clone();
    }
    let a = rows_matrix(cons, idx);
    let g = a.gram();
    let rhs = a.mul_vec(c);
    match solve_linear(&g, &rhs) {
        SolveResult::Unique(y) => {
            let mut d = c.clone();
            for (k, &j) in idx.iter().enumerate() {
                d.axpy(&-&y[k], cons[j].normal());
            }
            d
        }
        _ => unreachable!("tight rows are kept independent"),
    }
}

/// Some nonzero vector orthogonal to all rows `idx` (fewer than `n` of them).
fn null_vector<C: Constraint>(cons: &[C], idx: &[usize], n: usize) -> QVector {
    for e in 0..n {
        let d = project_out(cons, idx, &QVector::unit(n, e));
        if !d.is_zero() {
            return d;
        }
    }
    unreachable!("rows do not span the space")
}

/// Smallest step along `d` from `x` that makes an inactive constraint tight;
/// ties go to the smallest index.
fn ratio_test<C: Constraint>(cons: &[C], skip: &[usize], x: &QVector, d: &QVector) -> Option<(usize, Rational)> {
    let mut best: Option<(usize, Rational)> = None;
    for (j, c) in cons.iter().enumerate() {
        if skip.contains(&j) {
            continue;
        }
        let ad = c.normal().dot(d);
        if !ad.is_positive() {
            continue;
        }
        let t = (c.bound() - c.normal().dot(x)) / ad;
        if best.as_ref().is_none_or(|(_, b)| t < *b) {
            best = Some((j, t));
        }
    }
    best
}

/// Maximizes `c·x` and returns an optimal vertex.
pub fn maximize<C: Constraint>(cons: &[C], c: &QVector) -> Result<LpVertex> {
    let n = c.len();
    let mut x = QVector::zeros(n);
    let mut tight: Vec<usize> = Vec::with_capacity(n);
    while tight.len() < n {
        let mut d = project_out(cons, &tight, c);
        if d.is_zero() {
            d = null_vector(cons, &tight, n);
        }
        let (j, t) = ratio_test(cons, &tight, &x, &d)
            .ok_or_else(|| LamiqError::InvalidInput("linear program is unbounded".into()))?;
        x.axpy(&t, &d);
        tight.push(j);
    }
    simplex(cons, c, x, tight)
}

fn simplex<C: Constraint>(cons: &[C], c: &QVector, mut x: QVector, mut basis: Vec<usize>) -> Result<LpVertex> {
    let n = c.len();
    for _ in 0..MAX_PIVOTS {
        let a = rows_matrix(cons, &basis);
        let lambda = match solve_linear(&a.transpose(), c) {
            SolveResult::Unique(l) => l,
            _ => return Err(LamiqError::Geometry("simplex basis became singular".into())),
        };
        let leave = (0..n)
            .filter(|&k| lambda[k].is_negative())
            .min_by_key(|&k| basis[k]);
        let Some(k) = leave else {
            return Ok(LpVertex { x, basis });
        };
        let mut rhs = QVector::zeros(n);
        rhs[k] = Rational::from_int(-1);
        let d = match solve_linear(&a, &rhs) {
            SolveResult::Unique(d) => d,
            _ => return Err(LamiqError::Geometry("simplex basis became singular".into())),
        };
        let (j, t) = ratio_test(cons, &basis, &x, &d)
            .ok_or_else(|| LamiqError::InvalidInput("linear program is unbounded".into()))?;
        x.axpy(&t, &d);
        basis[k] = j;
    }
    Err(LamiqError::Resource("simplex pivot limit reached".into()))
}
