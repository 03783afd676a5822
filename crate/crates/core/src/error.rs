use thiserror::Error;

/// Errors raised by the linear algebra kernels, samplers and experiment drivers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A precondition on the inputs was not met (shape, range, empty input, ...).
    #[error("contract violation: {0}")]
    Contract(String),

    /// An iterative routine did not converge, or a result failed a numerical sanity check.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// The Bloch-vector rejection sampler hit its attempt cap.
    #[error("rejection sampling exhausted after {attempts} attempts (d = {dim})")]
    RejectionExhausted { dim: usize, attempts: u64 },
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
