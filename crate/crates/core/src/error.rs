use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("malformed complex: {0}")]
    Malformed(String),

    #[error("gluing inconsistency on edge {edge:?}: {first} vs {second}")]
    Gluing {
        edge: (String, String),
        first: String,
        second: String,
    },

    #[error("complex failed validation: {0}")]
    Invalid(String),

    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),

    #[error("not a cell of the complex: {0:?}")]
    NotACell(Vec<String>),

    #[error("geometry mismatch: {0}")]
    Geometry(String),

    #[error("empty operand")]
    Empty,

    #[error("invalid Coxeter matrix: {0}")]
    Coxeter(String),

    #[error("enumeration budget of {0} exceeded")]
    Budget(usize),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("integrity error: {0}")]
    Integrity(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
