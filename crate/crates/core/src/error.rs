use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input rows or counts could not be turned into a dataset.
    #[error("ingest error: {0}")]
    Ingest(String),

    /// One of the two outcome classes is empty.
    #[error(
        "degenerate class: n_pos = {n_pos}, n_neg = {n_neg}; both classes need at least one sample"
    )]
    DegenerateClass { n_pos: u64, n_neg: u64 },

    #[error("predictor is not binary: {n_distinct} distinct score values")]
    NotBinary { n_distinct: usize },

    /// Variance estimates need at least two members per class.
    #[error(
        "insufficient data: n_pos = {n_pos}, n_neg = {n_neg}; need at least {required} per class"
    )]
    InsufficientData {
        n_pos: u64,
        n_neg: u64,
        required: u64,
    },

    #[error("invalid argument: {0}")]
    Argument(String),
}

impl Error {
    /// Stable machine-readable code, used by the CLI error stream.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Ingest(_) => "INGEST",
            Error::DegenerateClass { .. } => "DEGENERATE_CLASS",
            Error::NotBinary { .. } => "NOT_BINARY",
            Error::InsufficientData { .. } => "INSUFFICIENT_DATA",
            Error::Argument(_) => "ARGUMENT",
        }
    }
}
