use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {0} does not exist")]
    UnknownVertex(VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(String),
    #[error("parallel edge between {0} and {1}")]
    ParallelEdge(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbeddingError {
    #[error("rotation at vertex {0} does not list exactly its incident edges")]
    BadRotation(String),
    #[error("rotation covers {got} vertices, graph has {expected}")]
    WrongVertexCount { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlanarityError {
    #[error("planarity testing requires a connected graph")]
    Disconnected,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpqrError {
    #[error("SPQR-tree construction requires a biconnected graph with at least 3 vertices")]
    NotBiconnected,
    #[error("node {0} is not a Q-node")]
    NotQNode(usize),
    #[error("the root has no pertinent graph")]
    RootPertinent,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FccpError {
    #[error("the graph must be biconnected (got a graph that is not)")]
    NotBiconnected,
    #[error("edge classes cover {got} edges, graph has {expected}")]
    ClassCount { expected: usize, got: usize },
    #[error("pair <{0},{0}> has identical endpoints")]
    DegeneratePair(String),
    #[error("pair references unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("root edge {0} does not exist")]
    BadRoot(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("weight {0} is not one of 4, 2, 1")]
    InvalidWeight(u32),
    #[error("expected {expected} edge classes, got {got}")]
    ClassCount { expected: usize, got: usize },
    #[error("pair <{0},{1}> collides with an existing edge")]
    Collision(String, String),
    #[error("the embedded subgraph must be biconnected")]
    NotBiconnected,
    #[error("the given rotation of the embedded subgraph is not planar")]
    NotPlanar,
    #[error(transparent)]
    Embedding(#[from] EmbeddingError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {vertices} vertices, oracle cap is {cap}; use the SPQR solver instead")]
    CapExceeded { vertices: usize, cap: usize },
    #[error("enumeration exceeded {budget} planar rotation systems; use the SPQR solver instead")]
    BudgetExceeded { budget: u64 },
    #[error("the oracle requires a connected graph")]
    Disconnected,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}
