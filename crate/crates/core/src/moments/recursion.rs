//! Bottom-up recursion for volumes, barycenters and second-moment tensors.
//!
//! A `d`-face is cut into pyramids over its facets. With `V_i`, `B_i`, `U_i`
//! the data of facet `i`, `h_i` the height of the centroid `C` above it and
//! `h_b,i` the height of the barycenter `B`:
//!
//! ```text
//! V = (1/d) Σ h_i V_i
//! B = C + Σ h_i V_i (B_i − C) / ((d+1) V)
//! U = (1/(d+2)) Σ h_b,i [U_i + V_i (B_i − B)(B_i − B)ᵀ]
//! ```
//!
//! Volumes and tensors of a `d`-face are rational multiples of `√D`, where
//! `D` is the Gram determinant of an integral basis of its direction space.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{LamiqError, Result};
use crate::exactnum::linalg::{independent_subset, primitive_direction};
use crate::exactnum::{radq_normalize, rational_sqrt_exact, QMatrix, QVector, RadQ, Rational};
use crate::voronoi::{FaceLattice, FaceOrbit};

/// Exact geometry of one face-orbit representative.
#[derive(Clone, Debug, Serialize)]
pub struct MomentRecord {
    pub dim: usize,
    /// `V = volume_coeff·√radicand`.
    pub volume_coeff: Rational,
    /// Gram determinant of an integral direction basis; 1 for vertices and the cell.
    pub radicand: Rational,
    pub centroid: QVector,
    pub barycenter: QVector,
    /// Second moment about the barycenter, as a multiple of `√radicand`.
    pub moment_coeff: QMatrix,
    /// Squared heights of the centroid above each child, in child-link order.
    pub child_heights2: Vec<Rational>,
    /// Squared heights of the barycenter above each child.
    pub child_bary_heights2: Vec<Rational>,
    /// Orthogonal projector onto the direction space.
    #[serde(skip)]
    pub projector: QMatrix,
}

impl MomentRecord {
    /// Exact volume with a squarefree radicand.
    pub fn volume(&self) -> Result<RadQ> {
        radq_normalize(&self.volume_coeff, &to_biguint(&self.radicand)?)
    }

    pub fn volume_squared(&self) -> Rational {
        &self.volume_coeff.square() * &self.radicand
    }

    /// Barycenter offset `B − C`.
    pub fn offset(&self) -> QVector {
        self.barycenter.sub(&self.centroid)
    }

    /// `(tr U)²`, exact.
    pub fn trace_squared(&self) -> Rational {
        &self.moment_coeff.trace().square() * &self.radicand
    }

    /// `tr(U²)`, exact.
    pub fn trace_of_square(&self) -> Rational {
        &self.moment_coeff.mul(&self.moment_coeff).trace() * &self.radicand
    }
}

fn to_biguint(q: &Rational) -> Result<num_bigint::BigUint> {
    if !q.is_integer() || q.is_negative() {
        return Err(LamiqError::Geometry(format!("radicand {q} is not a nonnegative integer")));
    }
    Ok(q.numer().to_biguint().expect("nonnegative"))
}

/// Exact mean of the listed vertices.
pub fn centroid(coords: &[QVector], vertices: &[u32]) -> QVector {
    let n = coords[vertices[0] as usize].len();
    let mut c = QVector::zeros(n);
    for &v in vertices {
        c = c.add(&coords[v as usize]);
    }
    c.scale(&Rational::from_int(vertices.len() as i64).recip())
}

/// Integral basis of the direction space of a `d`-face, with its projector.
fn direction_space(coords: &[QVector], vertices: &[u32], d: usize, n: usize) -> Result<(Rational, QMatrix)> {
    if d == 0 {
        return Ok((Rational::one(), QMatrix::zeros(n, n)));
    }
    if d == n {
        return Ok((Rational::one(), QMatrix::identity(n)));
    }
    let base = &coords[vertices[0] as usize];
    let diffs: Vec<QVector> = vertices[1..].iter().map(|&v| coords[v as usize].sub(base)).collect();
    let idx = independent_subset(&diffs, d);
    if idx.len() != d {
        return Err(LamiqError::Geometry(format!("a {d}-face spans only {} dimensions", idx.len())));
    }
    let w = QMatrix::from_rows(&idx.iter().map(|&i| primitive_direction(&diffs[i])).collect::<Vec<_>>());
    let g = w.gram();
    let det = g.determinant();
    let ginv = g.inverse().expect("independent rows");
    let proj = w.transpose().mul(&ginv).mul(&w);
    Ok((det, proj))
}

/// `|v|² − vᵀPv`, the squared distance from the child plane through the origin.
fn residual2(v: &QVector, proj: &QMatrix) -> Rational {
    &v.norm2() - &v.dot(&proj.mul_vec(v))
}

/// Height of `apex` above the affine span of `child` (vertex indices), as an
/// exact `√(𝒢_d / 𝒢_{d−1})` from the Gram determinants with and without
/// `apex − centroid(child)`.
pub fn height_gram(coords: &[QVector], child: &[u32], apex: &QVector) -> Result<RadQ> {
    let base = &coords[child[0] as usize];
    let diffs: Vec<QVector> = child[1..].iter().map(|&v| coords[v as usize].sub(base)).collect();
    let idx = independent_subset(&diffs, diffs.len());
    let mut vs: Vec<QVector> = idx.iter().map(|&i| diffs[i].clone()).collect();
    let g0 = crate::exactnum::gram_determinant(&vs);
    vs.push(apex.sub(&centroid(coords, child)));
    let g1 = crate::exactnum::gram_determinant(&vs);
    if g1.is_zero() {
        return Err(LamiqError::Geometry("apex lies on the child's plane".into()));
    }
    crate::exactnum::radq_sqrt(&(&g1 / &g0))
}

fn exact_root(q: &Rational, what: &str) -> Result<Rational> {
    rational_sqrt_exact(q).ok_or_else(|| {
        LamiqError::IncompatibleRadicand(format!("{what} = √({q})"), "parent radicand".into())
    })
}

fn record(orbit: &FaceOrbit, coords: &[QVector], below: &[MomentRecord], n: usize) -> Result<MomentRecord> {
    let d = orbit.dim;
    let c = centroid(coords, &orbit.vertices);
    let (radicand, projector) = direction_space(coords, &orbit.vertices, d, n)?;
    if d == 0 {
        return Ok(MomentRecord {
            dim: 0,
            volume_coeff: Rational::one(),
            radicand,
            barycenter: c.clone(),
            centroid: c,
            moment_coeff: QMatrix::zeros(n, n),
            child_heights2: Vec::new(),
            child_bary_heights2: Vec::new(),
            projector,
        });
    }
    // Per child: weight s with h·V_child = s·√D and the child barycenter.
    let mut weights = Vec::with_capacity(orbit.children.len());
    let mut bary = Vec::with_capacity(orbit.children.len());
    let mut heights2 = Vec::with_capacity(orbit.children.len());
    let mut total = Rational::zero();
    for link in &orbit.children {
        let ch = &below[link.orbit as usize];
        let inv = link.transform.inverse();
        let v = inv.apply(&c).sub(&ch.centroid);
        let h2 = residual2(&v, &ch.projector);
        if !h2.is_positive() {
            return Err(LamiqError::Geometry(format!("centroid of a {d}-face lies on a facet plane")));
        }
        let s = exact_root(&(&(&h2 * &ch.volume_squared()) / &radicand), "pyramid volume")?;
        total = &total + &s;
        weights.push(s);
        bary.push(link.transform.apply(&ch.barycenter));
        heights2.push(h2);
    }
    let volume_coeff = &total / &Rational::from_int(d as i64);
    let mut offset = QVector::zeros(n);
    for (s, b) in weights.iter().zip(&bary) {
        offset.axpy(s, &b.sub(&c));
    }
    let barycenter = c.add(&offset.scale(&(&volume_coeff * &Rational::from_int(d as i64 + 1)).recip()));
    let mut moment = QMatrix::zeros(n, n);
    let mut bary_heights2 = Vec::with_capacity(orbit.children.len());
    for (link, b) in orbit.children.iter().zip(&bary) {
        let ch = &below[link.orbit as usize];
        let v = link.transform.inverse().apply(&barycenter).sub(&ch.centroid);
        let hb2 = residual2(&v, &ch.projector);
        let sb = exact_root(&(&(&hb2 * &ch.radicand) / &radicand), "barycentric height")?;
        let sep = b.sub(&barycenter);
        let mut term = link.transform.conjugate(&ch.moment_coeff);
        for i in 0..n {
            for j in 0..n {
                term[(i, j)] = &term[(i, j)] + &(&ch.volume_coeff * &(&sep[i] * &sep[j]));
            }
        }
        moment = moment.add(&term.scale(&sb));
        bary_heights2.push(hb2);
    }
    Ok(MomentRecord {
        dim: d,
        volume_coeff,
        radicand,
        centroid: c,
        barycenter,
        moment_coeff: moment.scale(&Rational::from_int(d as i64 + 2).recip()),
        child_heights2: heights2,
        child_bary_heights2: bary_heights2,
        projector,
    })
}

/// Moment records for every orbit of every dimension, `out[d][orbit]`.
///
/// `coords` may be a re-instantiation of the vertices the lattice was built
/// from, as long as the combinatorial type is unchanged.
pub fn face_moments(lattice: &FaceLattice, coords: &[QVector]) -> Result<Vec<Vec<MomentRecord>>> {
    let n = lattice.dim;
    let mut out: Vec<Vec<MomentRecord>> = Vec::with_capacity(n + 1);
    for d in 0..=n {
        let below: &[MomentRecord] = if d == 0 { &[] } else { &out[d - 1] };
        let level = lattice.levels[d]
            .par_iter()
            .map(|o| record(o, coords, below, n))
            .collect::<Result<Vec<_>>>()?;
        out.push(level);
    }
    Ok(out)
}
