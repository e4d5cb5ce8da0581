use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid word {0:?}: letters must be decimal digits")]
    InvalidWord(String),

    #[error("requested length {requested} exceeds the cap {cap}")]
    ResourceLimit { requested: usize, cap: usize },

    #[error("{x:?} is not below {y:?} in the Bruhat order")]
    NotComparable { x: String, y: String },

    #[error("{a:?} and {b:?} do not have the same length")]
    RankMismatch { a: String, b: String },

    #[error("{poly} is not of the form v^{ldiff} P(v^-2)")]
    ShapeViolation { poly: String, ldiff: u32 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("element {0:?} is not covered by any region")]
    Unclassified(String),

    #[error("malformed cache file: {0}")]
    Cache(String),

    #[error("malformed json: {0}")]
    Json(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
