use thiserror::Error;

use crate::exact::Kind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid scalar `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("set kind mismatch: {left} vs {right}")]
    KindMismatch { left: Kind, right: Kind },

    #[error("empty result")]
    EmptyResult,

    #[error("empty input: {0}")]
    EmptyInput(String),

    #[error("size cap exceeded: projected {projected} elements, cap {cap}")]
    SizeCap { projected: u128, cap: usize },

    #[error("{0}")]
    Precondition(String),

    #[error("degenerate: {0}")]
    Degenerate(String),

    #[error("ratio points must be distinct")]
    DuplicatePoints,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    /// An exact invariant that the constructions guarantee was violated.
    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("unbound set name `{0}`")]
    UnboundName(String),

    #[error("line {line}: {source}")]
    SetFile {
        line: usize,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
