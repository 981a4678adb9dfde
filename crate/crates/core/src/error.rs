use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("not a complex: d∘d ≠ 0 starting in degree {degree} (column {column})")]
    NotAComplex { degree: i64, column: usize },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("unknown built-in algebra `{0}`")]
    UnknownBuiltin(String),
    #[error("{0}")]
    InvalidArgument(String),
    #[error("cocomposition requires χ(A) = 0 (the comodule structure exists only for Euler characteristic zero), got χ = {0}")]
    NonzeroEuler(i64),
    #[error("vertex {vertex} is not in the ambient set of size {size}")]
    VertexOutOfRange { vertex: usize, size: usize },
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error("invalid Lie algebra: {0}")]
    InvalidLie(String),
}
