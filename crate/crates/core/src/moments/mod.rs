//! Exact volumes, barycenters and second-moment tensors of all faces, the
//! cell summary, and two independent cross-checks.

pub mod montecarlo;
pub mod oracle;
pub mod recursion;
pub mod summary;

pub use montecarlo::{monte_carlo_g, FloatDecoder, MonteCarloEstimate};
pub use oracle::{simplex_moment_oracle, OracleMoments};
pub use recursion::{centroid, face_moments, height_gram, MomentRecord};
pub use summary::{cell_summary, is_axial, normalized_moment, CellSummary};
