use thiserror::Error;

/// Problems found while reading or building a [`crate::Graph`].
#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: negative weight {weight}")]
    NegativeWeight { line: usize, weight: f64 },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("line {line}: vertex {vertex} out of range for declared n = {n}")]
    VertexOutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },
    #[error("vertex id {vertex} never appears; sparse ids require a 'p n m' header")]
    IdGap { vertex: usize },
    #[error("header declares m = {declared} edges but {found} were read")]
    EdgeCountMismatch { declared: usize, found: usize },
    #[error("graph has no vertices")]
    Empty,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("graph is not connected: vertex {unreached} is unreachable from vertex 0")]
    Disconnected { unreached: usize },
    #[error("root {root} out of range (n = {n})")]
    RootOutOfRange { root: usize, n: usize },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("graph has {n} vertices, above the oracle limit of {limit}")]
    OracleLimit { n: usize, limit: usize },
    #[error("graph has {n} vertices, above the exact diameter limit of {limit}")]
    DiameterLimit { n: usize, limit: usize },
    #[error("sampling did not stop within {0} iterations")]
    MaxIterations(usize),
    #[error("vertex counts differ: {left} vs {right}")]
    GraphMismatch { left: usize, right: usize },
    #[error("({0}, {0}) is not a vertex pair")]
    SelfPair(usize),
    #[error("no ε-central path known for pair ({u}, {v})")]
    PairAbsent { u: usize, v: usize },
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
