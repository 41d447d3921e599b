use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("weights must be nonnegative and finite (entry {index} = {value})")]
    InvalidWeight { index: usize, value: f64 },

    #[error("weights are all zero; cannot normalize")]
    ZeroMass,

    #[error("probabilities sum to {0}, expected 1")]
    NotNormalized(f64),

    #[error("order parameter must be a positive finite real, got {0}")]
    InvalidOrder(f64),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("q[{index}] = 0 where p[{index}] > 0")]
    SupportMismatch { index: usize },

    #[error("{0} is undefined at order 1")]
    UndefinedAtOne(&'static str),

    #[error("too many players: {n} (limit {limit})")]
    TooManyPlayers { n: usize, limit: usize },

    #[error("total value {total} exceeds the enumeration cap {limit}; raise --max-total")]
    TotalTooLarge { total: i64, limit: i64 },

    #[error("too many edges: {m} (limit {limit})")]
    TooManyEdges { m: usize, limit: usize },

    #[error("invalid game: {0}")]
    InvalidGame(String),

    #[error("invalid orientation: {0}")]
    InvalidOrientation(String),

    #[error("trace does not match game: {0}")]
    TraceMismatch(String),

    #[error("invalid cover: {0}")]
    InvalidCover(String),

    #[error("no feasible decomposition for the supplied cover")]
    Infeasible,

    #[error("instance file: {0}")]
    Instance(String),
}

pub type Result<T> = std::result::Result<T, Error>;
