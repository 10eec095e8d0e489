use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on the input was violated (shape, range, finiteness).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// Every examined triangle was degenerate, so no fraction can be formed.
    #[error("degenerate dataset: {0}")]
    Degenerate(String),

    /// A CSV cell or row could not be interpreted. `row` and `column` are 1-based
    /// positions in the source text.
    #[error("malformed data at row {row}, column {column}: {message}")]
    Parse {
        row: usize,
        column: usize,
        message: String,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
