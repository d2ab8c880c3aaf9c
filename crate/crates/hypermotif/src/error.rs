use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    #[error("unknown pattern name `{0}`")]
    UnknownPattern(String),

    #[error("kernel tuple has length {got}, pattern uses {expected} colors")]
    TupleLength { expected: usize, got: usize },

    #[error("sample has m = {m} hyperedges, statistic needs at least r = {r}")]
    SampleTooSmall { m: usize, r: usize },

    #[error("incomplete design needs at least one tuple")]
    EmptyDesign,

    #[error("ratio undefined: denominator statistic is zero")]
    ZeroDenominator,

    #[error("confidence level must lie strictly between 0 and 1, got {0}")]
    InvalidLevel(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("oracle cap exceeded: {0}")]
    OracleCap(String),

    #[error("no stability exponent: {0}")]
    Stability(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
