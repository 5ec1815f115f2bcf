//! Voronoi-relevant vectors by the `Λ/2Λ` coset criterion: a nonzero lattice
//! vector is relevant iff it and its negation are the only minimal-norm
//! members of their coset modulo `2Λ`.

use rayon::prelude::*;
use serde::Serialize;

use crate::exactnum::{QVector, Rational};

use super::closest::ClosestPointSearcher;
use super::generator::GeneratorMatrix;

/// A relevant vector with its integer coordinates in the generating basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelevantVector {
    pub coeffs: Vec<i64>,
    pub vector: QVector,
    pub norm2: Rational,
}

impl RelevantVector {
    /// Right-hand side of the facet inequality `x·m ≤ m·m/2`.
    pub fn rhs(&self) -> Rational {
        &self.norm2 / Rational::from_int(2)
    }
}

/// All relevant vectors, sorted by norm and then coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelevantVectorSet {
    pub vectors: Vec<RelevantVector>,
}

impl RelevantVectorSet {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Builds the set from integer coordinates, evaluated against `basis`.
    pub fn from_coeffs(basis: &GeneratorMatrix, coeffs: &[Vec<i64>]) -> Self {
        let mut vectors: Vec<RelevantVector> = coeffs
            .iter()
            .map(|c| {
                let v = basis.point(c);
                RelevantVector {
                    norm2: v.norm2(),
                    vector: v,
                    coeffs: c.clone(),
                }
            })
            .collect();
        vectors.sort_by(|a, b| a.norm2.cmp(&b.norm2).then_with(|| a.vector.cmp(&b.vector)));
        RelevantVectorSet { vectors }
    }
}

/// Computes all relevant vectors of the lattice generated by `basis`.
pub fn relevant_vectors(basis: &GeneratorMatrix) -> RelevantVectorSet {
    let n = basis.dim();
    let doubled = ClosestPointSearcher::new(&basis.scaled(&Rational::from_int(2)));
    let cosets: Vec<u32> = (1u32..(1u32 << n)).collect();
    let per_coset: Vec<Vec<Vec<i64>>> = cosets
        .par_iter()
        .map(|&mask| {
            let c: Vec<i64> = (0..n).map(|i| ((mask >> i) & 1) as i64).collect();
            let v0 = basis.point(&c);
            // Minimal members v0 − 2u·B correspond to points of 2Λ closest to v0.
            let hits = doubled.closest(&v0);
            if hits.coords.len() != 2 {
                return Vec::new();
            }
            hits.coords
                .iter()
                .map(|u| c.iter().zip(u).map(|(ci, ui)| ci - 2 * ui).collect())
                .collect()
        })
        .collect();
    let coeffs: Vec<Vec<i64>> = per_coset.into_iter().flatten().collect();
    RelevantVectorSet::from_coeffs(basis, &coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_lattice() {
        let rv = relevant_vectors(&GeneratorMatrix::identity(2));
        assert_eq!(rv.len(), 4);
        assert!(rv.vectors.iter().all(|v| v.norm2 == Rational::one()));
    }

    #[test]
    fn hexagonal_lattice_has_six() {
        let b = GeneratorMatrix::from_rows(&[
            QVector::from_ints(&[1, 0]),
            QVector(vec![Rational::new(1, 2), Rational::new(3, 4)]),
        ])
        .unwrap();
        // Not exactly hexagonal, but a generic 2-D lattice has 6 relevant vectors.
        assert_eq!(relevant_vectors(&b).len(), 6);
    }
}
