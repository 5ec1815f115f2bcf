//! Exact Voronoi cells, second moments and optimal parameters for
//! one-parameter laminated lattice families.

pub mod cell;
pub mod error;
pub mod exactnum;
pub mod family;
pub mod lattice;
pub mod moments;
pub mod symmetry;
pub mod voronoi;

pub use error::{LamiqError, Result};
