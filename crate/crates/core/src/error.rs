use thiserror::Error;

/// Errors raised by the engine.
///
/// Variants are grouped by who is at fault: the input data, a violated
/// precondition of an otherwise well-formed request, or the engine itself.
#[derive(Debug, Error)]
pub enum GerbeError {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("malformed simplicial map: {0}")]
    MalformedMap(String),
    #[error("malformed surface: {0}")]
    MalformedSurface(String),
    #[error("malformed observable: {0}")]
    MalformedObservable(String),
    #[error("malformed quotient cocycle: {0}")]
    MalformedCocycle(String),
    #[error("unknown fixture `{0}`")]
    UnknownFixture(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("empty overlap: {0}")]
    EmptyOverlap(String),
    #[error("no bounding chain: {0}")]
    NoBoundingChain(String),
    #[error("invalid connection: {0}")]
    InvalidConnection(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl GerbeError {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            GerbeError::MalformedInput(_)
            | GerbeError::MalformedMap(_)
            | GerbeError::MalformedSurface(_)
            | GerbeError::MalformedObservable(_)
            | GerbeError::MalformedCocycle(_)
            | GerbeError::UnknownFixture(_)
            | GerbeError::Io(_)
            | GerbeError::Json(_) => 2,
            GerbeError::Precondition(_)
            | GerbeError::EmptyOverlap(_)
            | GerbeError::NoBoundingChain(_)
            | GerbeError::InvalidConnection(_) => 3,
            GerbeError::Internal(_) => 4,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            GerbeError::MalformedInput(_) => "malformed-input",
            GerbeError::MalformedMap(_) => "malformed-map",
            GerbeError::MalformedSurface(_) => "malformed-surface",
            GerbeError::MalformedObservable(_) => "malformed-observable",
            GerbeError::MalformedCocycle(_) => "malformed-cocycle",
            GerbeError::UnknownFixture(_) => "unknown-fixture",
            GerbeError::Precondition(_) => "precondition",
            GerbeError::EmptyOverlap(_) => "empty-overlap",
            GerbeError::NoBoundingChain(_) => "no-bounding-chain",
            GerbeError::InvalidConnection(_) => "invalid-connection",
            GerbeError::Internal(_) => "internal",
            GerbeError::Io(_) => "io",
            GerbeError::Json(_) => "json",
        }
    }
}

pub type Result<T, E = GerbeError> = std::result::Result<T, E>;
