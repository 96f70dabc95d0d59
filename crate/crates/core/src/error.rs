use thiserror::Error;

/// A problem found while reading an instance or solution file.
///
/// `line` is 1-based; `0` means the problem concerns the file as a whole
/// (for example a missing header key).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    /// City indices in messages are 1-based, as in the file formats.
    #[error("city {city} is out of range 1..={n}")]
    CityOutOfRange { city: usize, n: usize },

    #[error("item {item} is out of range 1..={m}")]
    ItemOutOfRange { item: usize, m: usize },

    #[error("weight {weight} exceeds knapsack capacity {capacity}")]
    Overweight { weight: u64, capacity: u64 },

    #[error("city {city} of item {item} is not on the tour")]
    CityNotOnTour { item: usize, city: usize },

    #[error("invalid score weights: {0}")]
    InvalidScoreWeights(String),

    #[error("profit {profit} exceeds the upper bound {bound}")]
    BoundViolated { profit: u64, bound: String },

    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
