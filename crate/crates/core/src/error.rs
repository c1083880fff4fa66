use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("no path between {from} and {to}")]
    Unreachable { from: usize, to: usize },

    #[error("graph must be connected")]
    Disconnected,

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(String),

    #[error("tree decomposition violates vertex connectivity: vertex {vertex} {detail}")]
    VertexCondition { vertex: usize, detail: String },

    #[error("tree decomposition does not cover edge ({0}, {1})")]
    EdgeCondition(usize, usize),

    #[error("skeleton vertex {vertex} has out-degree {degree}, above the allowed {limit}")]
    OutDegree {
        vertex: usize,
        degree: usize,
        limit: usize,
    },

    #[error("skeleton contains a cycle")]
    CyclicSkeleton,

    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),

    #[error("embedding has genus {found}, expected {expected}")]
    GenusMismatch { expected: usize, found: usize },

    #[error("embedding is planar; use the planar route instead")]
    PlanarInput,

    #[error("face {0:?} cannot be triangulated without parallel edges")]
    Untriangulable(Vec<usize>),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("coloring covers {found} vertices, graph has {expected}")]
    ColoringLength { expected: usize, found: usize },

    #[error("coloring is not p-centered: component {witness:?} has no uniquely colored vertex")]
    NotCentered { witness: Vec<usize> },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
