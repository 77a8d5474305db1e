use thiserror::Error;

use crate::scalars::Algebra;

/// Errors raised anywhere in the library.
///
/// Variants are grouped by how the command-line front end reports them:
/// parse problems, violated preconditions, and numerical failures.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("algebra mismatch: {left} vs {right}")]
    AlgebraMismatch { left: Algebra, right: Algebra },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("component count {got} does not match {algebra} (expects {expected})")]
    ComponentCount { algebra: Algebra, expected: usize, got: usize },

    #[error("element is a zero divisor: {0}")]
    ZeroDivisor(String),

    #[error("map is not an algebra automorphism: {0}")]
    NotAutomorphism(String),

    /// A structural precondition failed; `residual` is the measured defect.
    #[error("precondition violated: {what} (residual {residual:e}, tolerance {tol:e})")]
    Precondition { what: String, residual: f64, tol: f64 },

    #[error("degenerate norm: {0}")]
    DegenerateNorm(String),

    #[error("basis is not orthonormal (residual {0:e})")]
    NotOrthonormal(f64),

    #[error("orthogonal complement construction failed: {0}")]
    Complement(String),

    #[error("eigenvalue clusters are not separated: {0}")]
    ClusterSeparation(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("eigenvalues are not rational: irreducible factor {factor}")]
    IrrationalEigenvalues { factor: String },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn precondition(what: impl Into<String>, residual: f64, tol: f64) -> Self {
        Error::Precondition { what: what.into(), residual, tol }
    }

    /// Process exit code used by the `starspec` binary.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Io(_) | Error::ComponentCount { .. } => 2,
            Error::Numerical(_)
            | Error::ClusterSeparation(_)
            | Error::Complement(_)
            | Error::DegenerateNorm(_)
            | Error::NotOrthonormal(_) => 4,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
