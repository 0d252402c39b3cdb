use thiserror::Error;

/// Errors produced by the exact-arithmetic and enumeration layers.
///
/// Every operation on malformed or out-of-domain input reports one of these;
/// nothing in the library panics on user-supplied data.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("zero vector not allowed here")]
    ZeroVector,

    #[error("point is not in the cone")]
    NotInCone,

    #[error("point is not a lattice point")]
    NotALatticePoint,

    #[error("generator index {0} is not in the minimal face")]
    IndexNotInMinimalFace(usize),

    #[error("not a critical vector: {0}")]
    NotACritVector(String),

    #[error("w is not in the interior of the cone")]
    NonInteriorW,

    #[error("search region is unbounded; a truncation bound is required")]
    UnboundedRegion,

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("bad parameters: {0}")]
    BadParameters(String),

    #[error("invalid cone: {0}")]
    InvalidCone(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
