use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCount { left: usize, right: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid word: {0}")]
    InvalidWord(String),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("strand position {pos} out of range for a word of length {len}")]
    Position { pos: usize, len: usize },

    #[error("red strands cannot cross (positions {0} and {1})")]
    RedCrossing(usize, usize),

    #[error("polynomial is not invariant under {0}")]
    NotInvariant(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("matrix is not invertible")]
    Singular,

    #[error("group element is outside the parabolic subgroup")]
    NotParabolic,

    #[error("enumeration too large: {0}")]
    TooLarge(String),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
