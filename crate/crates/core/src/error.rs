use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error(
        "Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    NoConvergence { sweeps: usize, off_norm: f64 },

    #[error("matrix is not orthogonal: |Q^T Q - I| = {0:e}")]
    NotOrthogonal(f64),

    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("off-axis point required: coordinate {axis} vanishes")]
    OffAxisRequired { axis: usize },

    #[error("infeasible query: {0}")]
    Infeasible(String),

    #[error("unsupported dimension {0}")]
    UnsupportedDimension(usize),

    #[error("solver failure: {0}")]
    SolverFailure(String),
}
