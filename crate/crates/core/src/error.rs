use thiserror::Error;

use crate::graph::VertexRef;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("edge ({left}, {right}) out of range for a {left_count}x{right_count} graph")]
    EdgeOutOfRange {
        left: usize,
        right: usize,
        left_count: usize,
        right_count: usize,
    },
    #[error("vertex {vertex} out of range for a {left_count}x{right_count} graph")]
    VertexOutOfRange {
        vertex: VertexRef,
        left_count: usize,
        right_count: usize,
    },
    #[error("line {line}: index out of range: {detail}")]
    IndexOutOfRangeAtLine { line: usize, detail: String },
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("line {line}: malformed edge line {text:?}")]
    MalformedEdgeLine { line: usize, text: String },
    #[error("side is empty")]
    EmptySide,
    #[error("graph is not balanced ({left_count}x{right_count})")]
    UnbalancedGraph { left_count: usize, right_count: usize },
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph has no edges")]
    NoEdges,
    #[error("average degree {0} must exceed 1")]
    DegreeTooSmall(String),
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("invalid size: {0}")]
    InvalidSize(String),
    #[error("epsilon must lie strictly between 0 and 1")]
    InvalidEpsilon,
    #[error("degeneracy parameter must be non-negative, got {0}")]
    NegativeD(i64),
    #[error("instance with {n} vertices per side exceeds oracle limit {limit}")]
    InstanceTooLarge { n: usize, limit: usize },
    #[error("trace step {step} does not apply on replay: {reason}")]
    TraceMismatch { step: usize, reason: String },
}

impl Error {
    /// Whether this error stems from an out-of-range index of any flavour.
    pub fn is_index_out_of_range(&self) -> bool {
        matches!(
            self,
            Error::EdgeOutOfRange { .. }
                | Error::VertexOutOfRange { .. }
                | Error::IndexOutOfRangeAtLine { .. }
        )
    }
}
