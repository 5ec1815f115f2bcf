//! Vertex enumeration, face lattices with orbit reduction, and face classes
//! of a Voronoi cell at a fixed rational parameter.

pub mod classify;
pub mod cone;
pub mod faces;
pub mod lp;
pub mod vertices;

pub use vertices::{
    active_facets, enumerate_vertices, facet_vertex_set, facets_from_relevant, solve_vertex, EnumerationConfig,
    EnumerationStats, FacetAction, FacetSpec, VertexOrbit, VertexSet, VertexSolve,
};
pub use faces::{build_face_lattice, ChildLink, FaceLattice, FaceOrbit, RankOracle};
pub use classify::{classify_faces, Classification, FaceClass};
