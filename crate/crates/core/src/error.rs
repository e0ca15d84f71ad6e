use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graphs on more than {max} vertices are not supported (got {n})")]
    TooManyVertices { n: usize, max: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge ({0}, {1}) not present")]
    MissingEdge(usize, usize),
    #[error("cannot contract a vertex with itself ({0})")]
    SelfContraction(usize),
    #[error("empty part")]
    EmptyPart,
    #[error("graph must be connected")]
    Disconnected,
    #[error("graph needs at least {need} vertices (has {n})")]
    TooFewVertices { n: usize, need: usize },
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("not a facet: {0}")]
    InvalidFacet(String),
    #[error("same facet pair")]
    SameFacetPair,
    #[error("colored graph is not conjugate: {0}")]
    NotConjugate(String),
    #[error("dimension {d} is below the supported minimum {min}")]
    DimensionTooSmall { d: usize, min: usize },
    #[error("parameter {name} = {value} is below the minimum {min}")]
    ParameterTooSmall {
        name: &'static str,
        value: usize,
        min: usize,
    },
    #[error("no red completion found")]
    NoRedCompletion,
    #[error("exhaustive enumeration limited to n <= {max}; use sampled mode")]
    UseSampledMode { max: usize },
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
