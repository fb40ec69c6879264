use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("part {value} at position {index} is not a positive integer")]
    NonPositivePart { index: usize, value: i64 },

    #[error("parts are not weakly decreasing at position {index}")]
    NotWeaklyDecreasing { index: usize },

    #[error("weight mismatch: lambda is a partition of {lambda}, mu is a partition of {mu}")]
    WeightMismatch { lambda: usize, mu: usize },

    #[error("{what}: requested {requested}, cap is {cap}")]
    ResourceLimit {
        what: &'static str,
        requested: usize,
        cap: usize,
    },

    #[error("invalid mode `{0}` (expected `types-only` or `full-eval`)")]
    InvalidMode(String),

    #[error("invalid request: {0}")]
    InvalidRequest(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("partition-count cache: {0}")]
    TableCache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::ResourceLimit { .. })
    }
}
