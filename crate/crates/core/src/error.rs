use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("clusters overlap at vertex {0}")]
    OverlappingClusters(usize),
    #[error("leader {leader} is not a member of cluster {cluster}")]
    LeaderOutsideCluster { cluster: usize, leader: usize },
    #[error("empty cluster")]
    EmptyCluster,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("peeling stalled with {remaining} vertices left above degree {threshold}")]
    PeelingStalled { remaining: usize, threshold: f64 },
    #[error("{what} has size {size}, above the exhaustive-search cap {cap}")]
    Oversize { what: &'static str, size: usize, cap: usize },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
