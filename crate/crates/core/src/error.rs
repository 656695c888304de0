use thiserror::Error;

/// Errors raised by the ring solver and its reference computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    #[error("invalid interaction: {0}")]
    InvalidInteraction(String),

    #[error("truncation order N = {0} must be even")]
    OddTruncation(u32),

    #[error("mode (m = {m}, n = {n}) lies outside the truncation N = {n_trunc}")]
    ModeOutOfRange { m: i32, n: i32, n_trunc: u32 },

    #[error("flat index {index} lies outside 1..={dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("invalid quadrature: {0}")]
    InvalidQuadrature(String),

    #[error("Coulomb integrand is singular for equal radii (r1 = r2 = {0})")]
    SingularIntegrand(f64),

    #[error(
        "quadrature did not converge: {points} points reached, last change {estimate:e} > tolerance {tolerance:e}"
    )]
    QuadratureNotConverged {
        points: usize,
        estimate: f64,
        tolerance: f64,
    },

    #[error("matrix is not symmetric: |a[{row}][{col}] - a[{col}][{row}]| = {diff:e}")]
    NotSymmetric { row: usize, col: usize, diff: f64 },

    #[error("requested {requested} eigenpairs from a {dim}x{dim} matrix")]
    EigenCount { requested: usize, dim: usize },

    #[error("symmetric eigensolver did not converge for a {dim}x{dim} matrix within {max_iterations} iterations")]
    NoConvergence { dim: usize, max_iterations: usize },

    #[error("mathieu domain error: {0}")]
    MathieuDomain(String),

    #[error("solution is not separable in the relative angle: off-sector weight {0:e}")]
    NotRelativeSeparable(f64),

    #[error("profile is identically zero")]
    DegenerateProfile,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
