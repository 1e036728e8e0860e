use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),

    #[error("invalid parameters for {family}: {reason}")]
    InvalidParams { family: String, reason: String },

    #[error("{op} requires a simple unweighted loop-free graph")]
    NotSimple { op: &'static str },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex set is empty")]
    EmptySet,

    #[error("malformed partition: {0}")]
    MalformedPartition(String),

    #[error("pendant graph is not regular")]
    NotRegular,

    #[error("{0} must be positive")]
    NonPositive(&'static str),

    #[error("{0} is not square-free")]
    NotSquareFree(u64),

    #[error("search range is empty: N_max ({n_max}) < N_floor ({n_floor})")]
    EmptyRange { n_floor: i64, n_max: i64 },

    #[error("distance-{distance} graph is not a perfect matching (antipodal fibres must have size 2)")]
    NotAntipodalMatching { distance: usize },

    #[error("Kronecker search exhausted: no solution for l in ({n_floor}, {n_max}] at eps {eps:e}")]
    KroneckerExhausted { n_floor: i64, n_max: i64, eps: f64 },

    #[error("rule not applicable: {0}")]
    NotApplicable(String),

    #[error("{0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
