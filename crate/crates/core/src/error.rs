use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operator is not Hermitian (max deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("non-unique steady state: null space has dimension {null_dim}")]
    NonUniqueSteadyState { null_dim: usize },

    #[error("steady-state solve did not converge: residual {residual:e} exceeds {tolerance:e}")]
    Convergence { residual: f64, tolerance: f64 },

    #[error("integration failed: trace drift {drift:e} (step too large?)")]
    Integration { drift: f64 },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("unresolvable parameter path `{0}`")]
    UnknownParameter(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
