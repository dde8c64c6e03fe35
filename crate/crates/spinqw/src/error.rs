use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),
    #[error("index {index} exceeds parameter horizon {horizon}")]
    Horizon { index: usize, horizon: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("partition {0} lies outside the declared box")]
    BoxOverflow(String),
    #[error("inadmissible contour: {0}")]
    Contour(String),
    #[error("divergent parameter regime: {0}")]
    Divergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;
