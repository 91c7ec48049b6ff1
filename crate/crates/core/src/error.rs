use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("point not in space: {0:?}")]
    PointNotInSpace(String),
    #[error("empty support")]
    EmptySupport,
    #[error("space mismatch")]
    SpaceMismatch,
    #[error("not a max-plus convex combination: {0}")]
    NotConvexCombination(String),
    #[error("epsilon must lie in (0, 1], got {0}")]
    EpsilonOutOfRange(f64),
    #[error("non-finite value {0}")]
    NonFinite(f64),
    #[error("invalid space: {0}")]
    InvalidSpace(String),
    #[error("invalid measure: {0}")]
    InvalidMeasure(String),
    #[error("invalid function: {0}")]
    InvalidFunction(String),
    #[error("invalid map: {0}")]
    InvalidMap(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
}

impl Error {
    pub(crate) fn schema(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            path: path.into(),
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
