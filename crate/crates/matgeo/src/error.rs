use thiserror::Error;

/// Errors raised by the numerical operations in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left}x{left} vs {right}x{right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error(
        "matrix is not Hermitian: asymmetry {violation:.3e} exceeds tolerance {tolerance:.3e}"
    )]
    NotHermitian { violation: f64, tolerance: f64 },

    #[error("matrix is not positive {kind}: offending eigenvalue {eigenvalue:.6e}")]
    NotPositive { kind: &'static str, eigenvalue: f64 },

    #[error(
        "eigensolver did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:.3e})"
    )]
    EigenNonConvergence { sweeps: usize, off_norm: f64 },

    #[error("not solvable: trace = {trace_abs}")]
    NotSolvable { trace_abs: f64 },

    #[error("degenerate geometry: laplacian kernel has dimension {kernel_dim}, expected 1")]
    DegenerateGeometry { kernel_dim: usize },

    #[error("integration failed at step {step}: {reason}")]
    Integration { step: usize, reason: String },

    #[error("state lost positive definiteness at step {step} (eigenvalue {eigenvalue:.6e})")]
    PositivityLoss { step: usize, eigenvalue: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
