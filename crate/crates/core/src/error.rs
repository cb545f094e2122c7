use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero vector is not a projective point")]
    ZeroVector,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("not invertible")]
    NotInvertible,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("points coincide")]
    SamePoint,
    #[error("point {0} is not on the Veronese surface")]
    NotOnSurface(String),
    #[error("point {0} is outside domain W")]
    OutsideDomain(String),
    #[error("perspectivity: {0}")]
    Perspectivity(String),
    #[error("cap column order is undefined for a cap not built by the parametrization")]
    CapOrigin,
    #[error("class mismatch: {0}")]
    ClassMismatch(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
