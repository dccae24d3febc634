use thiserror::Error;

use crate::hypercore::{PartitionDefect, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("hypergraph must have at least one vertex")]
    NoVertices,
    #[error("hypergraph has {n} vertices, at most {max} are supported")]
    TooManyVertices { n: usize, max: usize },
    #[error("edge {edge} has no vertices")]
    EmptyEdge { edge: usize },
    #[error("vertex {vertex} out of range for a hypergraph on {n} vertices")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("sets overlap")]
    OverlappingSets,
    #[error("invalid partition: {0}")]
    InvalidPartition(PartitionDefect),
    #[error("invalid labeling: {0}")]
    BadLabeling(String),
    #[error("hypergraph has no transversal coalition partition")]
    NoTrcPartition,
    #[error("{n} vertices exceeds the enumeration limit of {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("search budget exhausted after {nodes} nodes without a feasible partition")]
    BudgetExceeded { nodes: u64 },
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("outside theorem: {0}")]
    OutsideTheorem(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
