use thiserror::Error;

/// Failures reported by the numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum BesovError {
    #[error("evaluation budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("function does not appear to lie in B: {0}")]
    NotInBesov(String),
    #[error("function does not appear to lie in E: {0}")]
    NotInE(String),
    #[error("function does not appear to lie in W: {0}")]
    NotInW(String),
    #[error("function does not appear to lie in H^1: {0}")]
    NotInH1(String),
    #[error("derivative of order {0} unavailable")]
    MissingDerivative(u8),
    #[error("boundary values unavailable")]
    MissingBoundary,
    #[error("point too close to the boundary (Re z = {0})")]
    TooCloseToBoundary(f64),
    #[error("tail of the integral does not converge: {0}")]
    TailDivergence(String),
    #[error("-z = {0} lies in the spectrum")]
    SingularShift(String),
    #[error("matrix is not diagonalizable (eigenvector condition {0:e})")]
    NotDiagonalizable(f64),
    #[error("strip condition violated: n = {n} must exceed 2|Im z| = {two_im}")]
    StripViolation { n: f64, two_im: f64 },
    #[error("z·σ(A) leaves the closed right half-plane")]
    SectorViolation,
    #[error("spectrum leaves the closed right half-plane (min Re λ = {0:e})")]
    SpectrumOutsideHalfPlane(f64),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, BesovError>;
