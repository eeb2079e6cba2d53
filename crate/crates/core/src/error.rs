use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("context mismatch: (n={left_n}, N={left_big_n}) vs (n={right_n}, N={right_big_n})")]
    ContextMismatch { left_n: usize, left_big_n: usize, right_n: usize, right_big_n: usize },

    #[error("tensor is not in the image of the antisymmetrizer")]
    NotInAntImage,

    #[error("letter {letter} out of range 1..={n}")]
    LetterOutOfRange { letter: usize, n: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("operation requires N = 2, context has N = {0}")]
    RequiresQuadratic(usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
