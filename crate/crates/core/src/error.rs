use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed hypergraph document: {0}")]
    Malformed(String),

    #[error("vertex {vertex} out of range for {num_vertices} vertices")]
    VertexOutOfRange { vertex: usize, num_vertices: usize },

    #[error("duplicate edge {0:?}")]
    DuplicateEdge(Vec<usize>),

    #[error("edge {0:?} has fewer than two distinct vertices")]
    EdgeTooSmall(Vec<usize>),

    #[error("{0} vertices exceeds the supported maximum of 64")]
    TooManyVertices(usize),

    #[error("{what}: {requested} exceeds cap {limit}")]
    CapExceeded {
        what: &'static str,
        requested: u128,
        limit: u128,
    },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("hypergraph is not uniform")]
    NotUniform,

    #[error("hypergraph is not a graph (all edges must have size 2)")]
    NotAGraph,

    #[error("root finder did not converge after {iterations} iterations (worst residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("theorem violation: {0}")]
    TheoremViolation(String),
}

impl Error {
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_cap(what: &'static str, requested: u128, limit: u128) -> Result<()> {
    if requested > limit {
        Err(Error::CapExceeded {
            what,
            requested,
            limit,
        })
    } else {
        Ok(())
    }
}
