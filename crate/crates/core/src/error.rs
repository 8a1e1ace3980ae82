use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed distance matrix: {0}")]
    MalformedMatrix(String),
    #[error("duplicate point label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown point label {0:?}")]
    UnknownLabel(String),
    #[error("metric axioms violated: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    NotMetric(Vec<crate::metric::Violation>),
    #[error("a line needs two distinct points, got {0:?} twice")]
    SamePoint(String),
    #[error("subset too small: need at least {need} points, got {got}")]
    SubsetTooSmall { need: usize, got: usize },
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid hypergraph: {0}")]
    InvalidHypergraph(String),
    #[error("invalid equivalence: {0}")]
    InvalidEquivalence(String),
    #[error("triple {0:?} has no middle in this space")]
    NotCollinear([String; 3]),
    #[error("order is not linear: {0}")]
    NotLinear(String),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("orientation assignment is not total: hyperedge {0:?} has no middle")]
    NotTotal([usize; 3]),
    #[error("construction does not realize its advertised hypergraph: {0}")]
    ConstructionMismatch(String),
    #[error("obstacle route inapplicable: {0}")]
    RouteInapplicable(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
