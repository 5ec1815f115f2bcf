//! Generator matrices, the laminated-family template, exact closest-point
//! search and relevant vectors.

pub mod closest;
pub mod generator;
pub mod relevant;
pub mod spec;

pub use closest::{closest_points, ClosestPointSearcher, ClosestPoints};
pub use generator::{ae9, ae9_family, d8_generator, laminate, GeneratorMatrix, LaminatedFamily};
pub use relevant::{relevant_vectors, RelevantVector, RelevantVectorSet};
pub use spec::{LatticeSpec, ParameterSpec};
