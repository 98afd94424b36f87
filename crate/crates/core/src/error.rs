use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("unsupported field order {0}")]
    UnsupportedField(usize),

    #[error("resource guard exceeded: {0}")]
    ResourceGuard(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("duplicate rows {first} and {second}")]
    DuplicateRows { first: usize, second: usize },

    #[error("fixture {name}: {msg}")]
    Fixture { name: String, msg: String },
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}
