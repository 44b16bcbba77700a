use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library reports.
///
/// Input problems (parse and validation) are kept apart from resource ceilings so that
/// callers can map them to distinct exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("index out of range at line {line}, column {column}: {message}")]
    IndexOutOfRange {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("corner map is not a bijection at line {line}, column {column}: {message}")]
    NotBijection {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("self-glued face: tetrahedron {tet}, face {face}")]
    SelfGluedFace { tet: usize, face: usize },
    #[error("non-involutive gluing at tetrahedron {tet}, face {face}: {message}")]
    NonInvolutive {
        tet: usize,
        face: usize,
        message: String,
    },
    #[error("dimension mismatch: expected {expected} tetrahedra, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("inadmissible surface vector: {0}")]
    Inadmissible(String),
    #[error("invalid tube annotation: {0}")]
    InvalidTube(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("resource ceiling exceeded: {what} (limit {limit})")]
    Ceiling { what: String, limit: u64 },
}

impl Error {
    /// True for errors caused by hitting a configured resource ceiling.
    pub fn is_ceiling(&self) -> bool {
        matches!(self, Error::Ceiling { .. })
    }

    pub fn ceiling(what: impl Into<String>, limit: impl TryInto<u64>) -> Error {
        Error::Ceiling {
            what: what.into(),
            limit: limit.try_into().unwrap_or(u64::MAX),
        }
    }
}
