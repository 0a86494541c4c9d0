//! Error type shared across the library.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum FoliaError {
    #[error("context mismatch: left context is ({left}), right context is ({right})")]
    ContextMismatch { left: String, right: String },

    #[error("variable index {index} out of range for {nvars} variables")]
    VariableIndex { index: usize, nvars: usize },

    #[error("arity mismatch: expected {expected} coordinates, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("pole: denominator vanishes under assignment {assignment}")]
    Pole { assignment: String },

    #[error("missing parameter value for `{name}`")]
    MissingParameter { name: String },

    #[error("ideal has no cached basis; compute a Groebner basis first")]
    MissingBasis,

    #[error("unsupported size: {what} is {got}, limit is {limit}")]
    UnsupportedSize {
        what: String,
        got: usize,
        limit: usize,
    },

    #[error("division by zero scalar")]
    DivisionByZero,

    #[error("{what} must be non-zero")]
    ZeroInput { what: String },

    #[error("empty input: {what}")]
    EmptyInput { what: String },

    #[error("parse error at {line}:{col}: {message}")]
    Parse {
        line: usize,
        col: usize,
        message: String,
    },

    #[error("unknown name `{name}` ({kind})")]
    UnknownName { name: String, kind: String },

    #[error("invalid option: {message}")]
    InvalidOption { message: String },
}

pub type Result<T> = std::result::Result<T, FoliaError>;
