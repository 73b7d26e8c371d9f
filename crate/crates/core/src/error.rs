use thiserror::Error;

/// Errors surfaced by the workbench. Capacity errors name the limiting
/// parameter and the flag that raises it so callers can act on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{what}: parameter must be at least {min}, got {actual}")]
    TooSmall {
        what: &'static str,
        min: usize,
        actual: usize,
    },

    #[error("{what} is {actual}, over the configured limit {limit}; raise it with {flag}")]
    Capacity {
        what: &'static str,
        actual: usize,
        limit: usize,
        flag: &'static str,
    },

    #[error("word {word:?} is not a permutation of 1..={n}")]
    NotAPermutation { n: usize, word: Vec<usize> },

    #[error("permutation is not an automorphism of the base graph")]
    NotAnAutomorphism,

    #[error("vertex {v} is not a source of the orientation")]
    NotASource { v: usize },

    #[error("graph is disconnected: no acyclic orientation has a unique source")]
    Disconnected,

    #[error("vertex {v} out of range 1..={n}")]
    VertexOutOfRange { v: usize, n: usize },

    #[error("state-space size mismatch: {a} vs {b}")]
    SizeMismatch { a: usize, b: usize },

    #[error("{0}")]
    Invalid(String),

    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
