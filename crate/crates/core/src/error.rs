use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// `ξ = 0`: the orbit is a point and carries no quantization data.
    #[error("degenerate orbit: the weight is zero")]
    DegenerateOrbit,

    #[error("weight {0} is not integral; the symplectic class is not in H^2(X, 2πZ)")]
    NotIntegral(String),

    #[error("representation dimension {dim} exceeds the cap {cap}")]
    ResourceLimit { dim: u64, cap: u64 },

    #[error("Gram matrix is ill-conditioned (condition number {condition:.3e}); use a finer quadrature")]
    IllConditioned { condition: f64 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}
