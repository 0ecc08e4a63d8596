use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("index {index} exceeds table capacity {capacity}")]
    Capacity { index: usize, capacity: usize },

    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("non-finite {0}")]
    NonFinite(String),

    #[error(
        "s - 2n = 1 at n = {n} (s = {s}): exceptional index, use the odd-integer (logarithmic) expansion"
    )]
    ExceptionalIndex { n: usize, s: String },

    #[error("s = {s} is within {distance:e} of the odd integer {odd}; evaluate at s = {odd} exactly")]
    NearExceptional { s: String, odd: i64, distance: f64 },

    #[error("precision error: {0}")]
    Precision(String),

    #[error("configuration error: {0}")]
    Configuration(String),
}

pub type Result<T> = std::result::Result<T, Error>;
