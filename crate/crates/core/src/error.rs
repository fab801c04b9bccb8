use thiserror::Error;

use crate::graph::{CycleWitness, Vertex};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no such vertex: {0}")]
    NoSuchVertex(Vertex),
    #[error("not an edge: {0}{1}")]
    NotAnEdge(Vertex, Vertex),
    #[error("neighborhoods intersect: {0} and {1} share a neighbor")]
    NeighborhoodsIntersect(Vertex, Vertex),
    #[error("self-loop at {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {0} is not in the set")]
    NotInSet(Vertex),
    #[error("set is not a feedback vertex set: cycle {0} remains")]
    NotFvs(CycleWitness),
    #[error("feedback vertex set is not minimal: {0} is redundant")]
    Redundant(Vertex),
    #[error("graph minus {0} is not acyclic")]
    NotApex(Vertex),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("feedback vertex set of size {size} exceeds the limit {limit}")]
    FvsTooLarge { size: usize, limit: usize },
    #[error("maximum degree {0} exceeds 3")]
    DegreeTooLarge(usize),
    #[error("edge {0}{1} is not covered")]
    NotVertexCover(Vertex, Vertex),
    #[error("vertex cover is not minimal: {0} is redundant")]
    CoverNotMinimal(Vertex),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
