use thiserror::Error;

use crate::grocat::Backend;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("backend mismatch: {left} vs {right}")]
    BackendMismatch { left: Backend, right: Backend },

    #[error("cannot compose: {0}")]
    Composition(String),

    #[error("invalid object: {0}")]
    InvalidObject(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("invalid complex (simplex id {id}): {reason}")]
    InvalidComplex { id: i64, reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("order error: expected {p} <= {q}")]
    Order { p: f64, q: f64 },

    #[error("unsupported for {backend} backend: {what}")]
    Unsupported { backend: Backend, what: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("size bound exceeded: {0}")]
    SizeBound(String),

    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
