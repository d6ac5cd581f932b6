use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not unimodular: {0}")]
    NotUnimodular(String),

    #[error("element does not preserve the image of w - 1: {0}")]
    NotCentralizing(String),

    #[error("group generation exceeded cap {cap} ({partial} elements found)")]
    CapExceeded { cap: usize, partial: usize },

    #[error("element is not in the group")]
    NotInGroup,

    #[error("invalid root datum: {0}")]
    InvalidDatum(String),

    #[error("datum file line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("inexact polynomial division: {0}")]
    InexactDivision(String),

    #[error("non-integral result: {0}")]
    NonIntegral(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
