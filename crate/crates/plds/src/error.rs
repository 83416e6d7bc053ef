use thiserror::Error;

use crate::InvariantReport;

#[derive(Debug, Error)]
pub enum PldsError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("invalid batch: {0}")]
    InvalidBatch(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("vertex {0} already exists")]
    VertexExists(usize),
    #[error("vertex {0} satisfies the lower-bound invariant; no desire level")]
    NotViolating(usize),
    #[error("initial levels violate the invariants:\n{0}")]
    InvalidLevels(InvariantReport),
}
