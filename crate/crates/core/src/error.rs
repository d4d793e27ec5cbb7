use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QueryError {
    #[error("threshold must lie in (0, 1], got {0}")]
    ThresholdOutOfRange(String),
    #[error("cannot parse threshold {0:?}")]
    BadThreshold(String),
    #[error("query {0:?} starts with a universal quantifier; rewrite it with de Morgan's laws as a negated existential query")]
    LeadingUniversal(String),
    #[error("unknown query kind {0:?}")]
    UnknownKind(String),
    #[error("unknown universe {0:?}; expected dst or common")]
    UnknownUniverse(String),
    #[error("{kind} query needs {what}")]
    MissingThreshold { kind: &'static str, what: &'static str },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle refuses {edges} temporal edges (ceiling {ceiling})")]
    CeilingExceeded { edges: usize, ceiling: usize },
}
