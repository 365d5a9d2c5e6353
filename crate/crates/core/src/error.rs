use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("unsupported backend `{0}`")]
    UnsupportedBackend(String),
    #[error("invalid specification: {0}")]
    Invalid(String),
    #[error("cap exceeded: {0}")]
    CapExceeded(String),
    #[error("margin violation: {0}")]
    Margin(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("coset enumeration overflow after {0} cosets")]
    Overflow(usize),
    #[error("the truncation is disconnected")]
    Disconnected,
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("{0}")]
    Io(String),
}

impl Error {
    /// True for failures caused by a truncation that is too small for the request.
    pub fn is_margin(&self) -> bool {
        matches!(self, Error::Margin(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
