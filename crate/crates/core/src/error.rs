use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// Raised when an operation would need to sample a law but was not given
    /// an RNG stream, or when a representation cannot support the operation.
    #[error("unsupported representation: {0}")]
    UnsupportedRepresentation(String),

    /// Parameter combination ruled out by a structural constraint
    /// (e.g. the exponent ordering q >= p required for d(r,s) to be real).
    #[error("constraint violated: {0}")]
    Constraint(String),

    #[error("did not converge: {0}")]
    NonConvergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
