use thiserror::Error;

use crate::Vertex;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),

    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(Vertex, Vertex),

    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },

    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),

    #[error("bad parameters for family `{family}`: {msg}")]
    BadParams { family: String, msg: String },

    #[error("graph has no edges")]
    Edgeless,

    #[error("vertex {0} is isolated")]
    IsolatedVertex(Vertex),

    #[error("owner {0} has no neighbor inside the base set")]
    EmptyNeighborhood(Vertex),

    #[error("coloring covers {len} vertices but vertex {vertex} needs a color")]
    IncompleteColoring { vertex: Vertex, len: usize },

    #[error("set is not independent: edge {{{0}, {1}}}")]
    NotIndependent(Vertex, Vertex),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("random colorer gave up after {} escalations ({} resamples)", .0.escalations, .0.resamples)]
    EscalationLimit(Box<crate::random::RunStats>),

    #[error("exact search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("edge {{{0}, {1}}} of the clique has no color")]
    PartialEdgeColoring(Vertex, Vertex),

    #[error("graph is not S_{k}-free: center {center}, leaves {leaves:?}")]
    NotStarFree {
        k: usize,
        center: Vertex,
        leaves: Vec<Vertex>,
    },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
