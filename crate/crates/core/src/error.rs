use thiserror::Error;

/// Errors produced anywhere in the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("node index {index} out of range (graph has {node_count} nodes)")]
    NodeOutOfRange { index: usize, node_count: usize },

    #[error("graph has {node_count} nodes, exceeding the exact solver limit of {limit}")]
    NodeLimitExceeded { node_count: usize, limit: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("graph is empty")]
    EmptyGraph,

    #[error("duplicate column `{0}`")]
    DuplicateColumn(String),

    #[error("column `{0}` contains a non-finite value")]
    NonFinite(String),

    #[error("malformed antecedent fragment `{0}`")]
    MalformedAntecedent(String),

    #[error("unknown feature `{0}`")]
    UnknownFeature(String),

    #[error("graph `{graph}`: {source}")]
    InGraph {
        graph: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }

    pub(crate) fn invalid(message: impl Into<String>) -> Self {
        Error::InvalidParameter(message.into())
    }

    /// Attaches the name of the graph being processed.
    pub fn in_graph(self, graph: impl Into<String>) -> Self {
        Error::InGraph { graph: graph.into(), source: Box::new(self) }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
