use thiserror::Error;

/// Errors raised by the measure computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The requested parameters do not describe a density matrix.
    #[error("nonphysical state: {0}")]
    Nonphysical(String),

    /// An argument lies outside the documented domain of an operation.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A numerical routine failed (no convergence, no admissible root,
    /// unresolved grid). This never signals a physical condition.
    #[error("numerical failure: {0}")]
    Numerical(String),

    /// A verification check found a counterexample.
    #[error("verification failed: {0}")]
    Verification(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! invalid {
    ($($arg:tt)*) => { $crate::error::Error::InvalidArgument(format!($($arg)*)) };
}

macro_rules! numerical {
    ($($arg:tt)*) => { $crate::error::Error::Numerical(format!($($arg)*)) };
}

pub(crate) use invalid;
pub(crate) use numerical;
