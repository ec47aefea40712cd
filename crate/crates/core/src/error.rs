use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed edge list at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },

    #[error("loop at vertex {0}")]
    Loop(usize),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),

    #[error("vertex set is not connected")]
    NotConnected,

    #[error("{what} is limited to {limit} vertices, got {actual}")]
    LimitExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("graph is not a tree")]
    NotATree,

    #[error("graph is not unicyclic")]
    NotUnicyclic,

    #[error("graph is not regular")]
    NotRegular,

    #[error("invalid elimination forest: {0}")]
    InvalidForest(String),

    #[error("forest covers {forest} vertices but the graph has {graph}")]
    VertexSetMismatch { forest: usize, graph: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("power iteration did not reach tolerance within {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("no simple pairing after {0} attempts")]
    RejectionLimit(u64),

    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
