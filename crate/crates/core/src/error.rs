use thiserror::Error;

/// Errors raised by constructions, parsers and verifiers.
///
/// Verification outcomes that are merely negative (an identity fails, a
/// design is unbalanced) are reported through dedicated report types and are
/// not errors.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot parse rational `{0}`")]
    ParseRational(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("not disjoint: {0}")]
    NotDisjoint(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("malformed design: {0}")]
    MalformedDesign(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("search space of {space} candidates exceeds the ceiling of {ceiling}; use a smaller range")]
    SearchTooLarge { space: u128, ceiling: u128 },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
