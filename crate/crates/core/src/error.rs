use alloc::string::String;
use alloc::vec::Vec;

use crate::group::Violation;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("expected {expected} arguments, found {found}")]
    Arity { expected: usize, found: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("unknown group family `{0}`")]
    UnknownFamily(String),
    #[error("invalid tensor spec: {0}")]
    InvalidSpec(String),
    #[error("coordinates do not satisfy the declared symmetry constraints")]
    SymmetryViolated,
    #[error("group fails validation with {} violation(s)", .0.len())]
    InvalidGroup(Vec<Violation>),
    #[error("structure constants are not skew-symmetric")]
    NotSkew,
    #[error("structure constants violate the Jacobi identity")]
    JacobiFailure,
}

pub type Result<T> = core::result::Result<T, Error>;
