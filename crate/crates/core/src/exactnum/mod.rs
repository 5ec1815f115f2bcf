//! Exact numeric substrate: rationals, single-radical numbers, dense linear
//! algebra and rigorous decimal approximations.

pub mod approx;
pub mod factor;
pub mod linalg;
pub mod radq;
pub mod rational;

pub use approx::{decimal_string, scientific_upper, ApproxReal, DEFAULT_PRECISION};
pub use linalg::{gram_determinant, solve_linear, solve_linear_multi, QMatrix, QVector, SolveResult};
pub use radq::{radq_add, radq_mul, radq_normalize, radq_sqrt, RadQ};
pub use rational::{rational_root_exact, rational_sqrt_exact, Rational};
