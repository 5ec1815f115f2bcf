//! Origin-preserving lattice symmetries as signed permutations, orbits,
//! canonical forms and the closed-form AE₉ orbit count.

pub mod group;
pub mod orbit;
pub mod signed_perm;

pub use group::{ae9_group, GroupSpec};
pub use orbit::{canonical_form, orbit, orbit_size_formula, partition_orbits, Orbit, VertexAction, DEFAULT_ORBIT_CAP};
pub use signed_perm::SignedPerm;
