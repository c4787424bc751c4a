use thiserror::Error;

/// Errors raised by the algebraic and numeric engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: String, right: String },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("basis map is singular")]
    Singular,
    #[error("configuration error: {0}")]
    Config(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown formula id `{0}`")]
    UnknownFormula(String),
    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
