use thiserror::Error;

/// Errors produced across the mosaic toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("out of bounds: {0}")]
    Bounds(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("move not applicable: {0}")]
    NotApplicable(String),

    #[error("invalid grid diagram: {0}")]
    InvalidGrid(String),

    #[error("corrupt certificate: {0}")]
    CertificateCorrupt(String),

    #[error("side mismatch: {0} vs {1}")]
    SideMismatch(usize, usize),

    #[error("unknown move label `{0}`")]
    UnknownLabel(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
