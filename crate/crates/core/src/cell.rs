//! The full pipeline at one parameter value: relevant vectors, vertices,
//! face lattice, moments, classes and the cell summary.

use serde::Serialize;

use crate::error::Result;
use crate::lattice::{relevant_vectors, GeneratorMatrix, RelevantVectorSet};
use crate::moments::{cell_summary, face_moments, CellSummary, MomentRecord};
use crate::symmetry::{GroupSpec, DEFAULT_ORBIT_CAP};
use crate::voronoi::{
    build_face_lattice, classify_faces, enumerate_vertices, facets_from_relevant, Classification, EnumerationConfig,
    EnumerationStats, FaceLattice, FacetSpec, VertexSet,
};

#[derive(Clone, Debug, Serialize)]
pub struct CellConfig {
    pub enumeration: EnumerationConfig,
    pub orbit_cap: usize,
    pub precision: u32,
}

impl Default for CellConfig {
    fn default() -> Self {
        CellConfig {
            enumeration: EnumerationConfig::default(),
            orbit_cap: DEFAULT_ORBIT_CAP,
            precision: crate::exactnum::DEFAULT_PRECISION,
        }
    }
}

/// Vertices only; the cheap first stage.
#[derive(Clone, Debug)]
pub struct CellVertices {
    pub basis: GeneratorMatrix,
    pub relevant: RelevantVectorSet,
    pub facets: Vec<FacetSpec>,
    pub vertices: VertexSet,
    pub stats: EnumerationStats,
}

/// Everything computed for one Voronoi cell.
#[derive(Clone, Debug)]
pub struct VoronoiCell {
    pub base: CellVertices,
    pub lattice: FaceLattice,
    pub records: Vec<Vec<MomentRecord>>,
    pub classes: Classification,
    pub summary: CellSummary,
}

impl CellVertices {
    pub fn build(basis: &GeneratorMatrix, group: &GroupSpec, cfg: &CellConfig) -> Result<Self> {
        group.validate_for(basis)?;
        let relevant = relevant_vectors(basis);
        let facets = facets_from_relevant(&relevant);
        let (vertices, stats) = enumerate_vertices(&facets, group, &cfg.enumeration)?;
        Ok(CellVertices {
            basis: basis.clone(),
            relevant,
            facets,
            vertices,
            stats,
        })
    }
}

impl VoronoiCell {
    pub fn build(basis: &GeneratorMatrix, group: &GroupSpec, cfg: &CellConfig) -> Result<Self> {
        Self::from_vertices(CellVertices::build(basis, group, cfg)?, group, cfg)
    }

    pub fn from_vertices(base: CellVertices, group: &GroupSpec, cfg: &CellConfig) -> Result<Self> {
        let lattice = build_face_lattice(&base.vertices, base.facets.len(), group, cfg.orbit_cap)?;
        let records = face_moments(&lattice, &base.vertices.coords)?;
        let classes = classify_faces(&lattice, &records)?;
        let summary = cell_summary(&records, cfg.precision)?;
        Ok(VoronoiCell {
            base,
            lattice,
            records,
            classes,
            summary,
        })
    }
}
