use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("space label mismatch: expected '{expected}', found '{found}'")]
    Label { expected: String, found: String },
    #[error("unknown catalog entry '{0}'")]
    UnknownName(String),
    #[error("lexical error at position {pos}: {msg}")]
    Lex { pos: usize, msg: String },
    #[error("parse error at position {pos}: expected {expected}, found {found}")]
    Syntax {
        pos: usize,
        expected: String,
        found: String,
    },
    #[error("shape error: {0}")]
    Shape(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("support margin violated: nonzero value within {margin} cells of the boundary")]
    Margin { margin: usize },
    #[error("degenerate field: the right-hand side of the ratio vanishes")]
    ZeroDenominator,
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
