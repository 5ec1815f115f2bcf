use thiserror::Error;

/// Error families. The CLI maps each family to its own exit code.
#[derive(Debug, Error)]
pub enum LamiqError {
    /// An argument outside an operation's domain (e.g. `a <= 0`, `sqrt` of a negative).
    #[error("domain error: {0}")]
    Domain(String),

    /// Malformed text input.
    #[error("parse error: {0}")]
    Parse(String),

    /// A well-formed but invalid lattice, group or facet description.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A configured budget (orbit cap, LP draw budget, bisection depth) was exhausted.
    #[error("resource budget exhausted: {0}")]
    Resource(String),

    /// `x√s + y√t` with different nonzero radicands.
    #[error("incompatible radicands {0} and {1}")]
    IncompatibleRadicand(String, String),

    /// An internal tripwire: results that cannot be right for a correct face lattice.
    #[error("geometry inconsistency: {0}")]
    Geometry(String),

    /// Face-class keys failed to separate distinct orbits.
    #[error("classification failure: {0}")]
    Classification(String),

    /// A fitted polynomial disagreed with a held-out exact sample.
    #[error("phase contamination: {0}")]
    PhaseContamination(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl LamiqError {
    /// True for the internal-consistency family (exit code 5).
    pub fn is_consistency(&self) -> bool {
        matches!(
            self,
            LamiqError::IncompatibleRadicand(..)
                | LamiqError::Geometry(_)
                | LamiqError::Classification(_)
                | LamiqError::PhaseContamination(_)
        )
    }
}

pub type Result<T, E = LamiqError> = std::result::Result<T, E>;
