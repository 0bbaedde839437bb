use thiserror::Error;

/// Errors raised while building or combining algebraic structures.
#[derive(Debug, Error)]
pub enum GroupoidError {
    #[error("malformed table: {0}")]
    MalformedTable(String),
    #[error("empty object set is not allowed")]
    EmptyObjectSet,
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("mismatched parent structure: {0}")]
    MismatchedParent(String),
    #[error("resource cap exceeded: {0}")]
    CapExceeded(String),
    #[error("validation failed: {0}")]
    ValidationFailed(String),
    #[error("undefined composition: {0}")]
    UndefinedComposition(String),
    #[error("{0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, GroupoidError>;
