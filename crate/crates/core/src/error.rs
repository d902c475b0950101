use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("variable lists differ: {left:?} vs {right:?}")]
    Alignment { left: Vec<String>, right: Vec<String> },

    #[error("substitution produces a zero denominator in factor `{0}`")]
    Pole(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("rank {rank} exceeds the configured bound {bound}")]
    BoundExceeded { rank: usize, bound: usize },

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("structural failure: {0}")]
    Structural(String),

    #[error("degenerate parameters: {0}")]
    Degenerate(String),

    #[error("not invariant under the Weyl group: {0}")]
    NotInvariant(String),

    #[error("hypothesis violated: {0}")]
    Hypothesis(String),

    #[error("out of admissible range: {0}")]
    Range(String),

    #[error("calibration failed: {0}")]
    Calibration(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),
}
