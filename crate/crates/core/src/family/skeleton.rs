//! Combinatorial skeleton of one phase and its re-instantiation at other
//! parameter values.

use serde::Serialize;

use crate::error::{LamiqError, Result};
use crate::exactnum::{solve_linear, QMatrix, QVector, Rational, SolveResult};
use crate::lattice::{closest_points, relevant_vectors, GeneratorMatrix, LaminatedFamily, RelevantVectorSet};
use crate::moments::{cell_summary, face_moments, CellSummary};
use crate::symmetry::GroupSpec;
use crate::voronoi::{
    build_face_lattice, classify_faces, enumerate_vertices, facets_from_relevant, Classification, EnumerationConfig,
    FaceLattice, FacetSpec, VertexSet,
};

/// Cheap-to-compare summary of a cell's combinatorial type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhaseSignature {
    pub relevant: usize,
    pub vertices: usize,
    pub vertex_classes: usize,
    /// Per-dimension face totals, when the face lattice was built.
    pub face_totals: Option<Vec<usize>>,
    /// Per-dimension congruence-class counts, when classified.
    pub face_classes: Option<Vec<usize>>,
}

/// Facets and vertices at a reference parameter, with enough structure to
/// re-solve every vertex at another parameter of the same phase.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub family: LaminatedFamily,
    pub group: GroupSpec,
    pub reference: Rational,
    /// Relevant vectors in generator coordinates, in facet order.
    pub facet_coeffs: Vec<Vec<i64>>,
    pub vertices: VertexSet,
    /// Sorted closest lattice points of each orbit representative, in
    /// generator coordinates. These may include non-relevant points.
    pub rep_closest: Vec<Vec<Vec<i64>>>,
}

fn facets_at(basis: &GeneratorMatrix, coeffs: &[Vec<i64>]) -> Vec<FacetSpec> {
    facets_from_relevant(&RelevantVectorSet {
        vectors: coeffs
            .iter()
            .map(|c| {
                let v = basis.point(c);
                crate::lattice::RelevantVector {
                    coeffs: c.clone(),
                    norm2: v.norm2(),
                    vector: v,
                }
            })
            .collect(),
    })
}

impl Skeleton {
    pub fn build(family: &LaminatedFamily, group: &GroupSpec, a: &Rational, cfg: &EnumerationConfig) -> Result<Self> {
        let basis = family.instantiate(a)?;
        group.validate_for(&basis)?;
        let rv = relevant_vectors(&basis);
        let facets = facets_from_relevant(&rv);
        let (vertices, _) = enumerate_vertices(&facets, group, cfg)?;
        let rep_closest = vertices
            .orbits
            .iter()
            .map(|o| {
                let mut c = closest_points(&basis, &vertices.coords[o.rep as usize]).coords;
                c.sort();
                c
            })
            .collect();
        Ok(Skeleton {
            family: family.clone(),
            group: group.clone(),
            reference: a.clone(),
            facet_coeffs: rv.vectors.iter().map(|v| v.coeffs.clone()).collect(),
            vertices,
            rep_closest,
        })
    }

    pub fn dim(&self) -> usize {
        self.family.dim()
    }

    pub fn facets_at(&self, a: &Rational) -> Result<Vec<FacetSpec>> {
        Ok(facets_at(&self.family.instantiate(a)?, &self.facet_coeffs))
    }

    pub fn signature(&self) -> PhaseSignature {
        PhaseSignature {
            relevant: self.facet_coeffs.len(),
            vertices: self.vertices.len(),
            vertex_classes: self.vertices.orbits.len(),
            face_totals: None,
            face_classes: None,
        }
    }

    /// All vertex coordinates at `a`, or `None` if `a` lies outside this
    /// skeleton's phase.
    ///
    /// Each orbit representative is re-solved from its tight facets and
    /// accepted only if its closest lattice points are exactly those it had at
    /// the reference. The relevant-vector set must also be unchanged.
    pub fn instantiate(&self, a: &Rational) -> Result<Option<Vec<QVector>>> {
        let basis = self.family.instantiate(a)?;
        let mut now: Vec<Vec<i64>> = relevant_vectors(&basis).vectors.into_iter().map(|v| v.coeffs).collect();
        let mut then = self.facet_coeffs.clone();
        now.sort();
        then.sort();
        if now != then {
            return Ok(None);
        }
        let facets = facets_at(&basis, &self.facet_coeffs);
        let mut reps = Vec::with_capacity(self.vertices.orbits.len());
        for (o, expect) in self.vertices.orbits.iter().zip(&self.rep_closest) {
            let act = &self.vertices.active[o.rep as usize];
            let a_mat = QMatrix::from_rows(&act.iter().map(|&j| facets[j as usize].normal.clone()).collect::<Vec<_>>());
            let b = QVector(act.iter().map(|&j| facets[j as usize].rhs.clone()).collect());
            let x = match solve_linear(&a_mat, &b) {
                SolveResult::Unique(x) => x,
                _ => return Ok(None),
            };
            let mut got = closest_points(&basis, &x).coords;
            got.sort();
            if got != *expect {
                return Ok(None);
            }
            reps.push(x);
        }
        let coords = (0..self.vertices.len())
            .map(|i| {
                let o = self.vertices.orbit_of[i] as usize;
                self.vertices.transform[i].apply(&reps[o])
            })
            .collect();
        Ok(Some(coords))
    }

    pub fn is_valid_at(&self, a: &Rational) -> Result<bool> {
        Ok(self.instantiate(a)?.is_some())
    }
}

/// A skeleton with its face lattice and classification at the reference.
#[derive(Clone, Debug)]
pub struct PhaseModel {
    pub skeleton: Skeleton,
    pub lattice: FaceLattice,
    pub classes: Classification,
}

impl PhaseModel {
    pub fn build(skeleton: Skeleton, orbit_cap: usize) -> Result<Self> {
        let facet_count = skeleton.facet_coeffs.len();
        let lattice = build_face_lattice(&skeleton.vertices, facet_count, &skeleton.group, orbit_cap)?;
        let records = face_moments(&lattice, &skeleton.vertices.coords)?;
        let classes = classify_faces(&lattice, &records)?;
        Ok(PhaseModel {
            skeleton,
            lattice,
            classes,
        })
    }

    pub fn signature(&self) -> PhaseSignature {
        PhaseSignature {
            face_totals: Some(self.lattice.totals()),
            face_classes: Some(self.classes.class_counts()),
            ..self.skeleton.signature()
        }
    }

    /// Exact cell summary at `a`, reusing the combinatorics.
    pub fn summary_at(&self, a: &Rational, precision: u32) -> Result<CellSummary> {
        let coords = self.skeleton.instantiate(a)?.ok_or_else(|| {
            LamiqError::PhaseContamination(format!("a = {a} lies outside the phase of a = {}", self.skeleton.reference))
        })?;
        let records = face_moments(&self.lattice, &coords)?;
        let summary = cell_summary(&records, precision)?;
        let det = self.skeleton.family.instantiate(a)?.determinant().abs();
        if summary.volume != det {
            return Err(LamiqError::Geometry(format!(
                "cell volume {} differs from |det B| = {det} at a = {a}",
                summary.volume
            )));
        }
        Ok(summary)
    }
}
