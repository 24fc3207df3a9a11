use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The requested computation is larger than the configured budget.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// The orbit-splitting bound needs `p` not to divide `n`.
    #[error("orbit-splitting hypothesis fails for p={p}, n={n}: some m_l >= p and p | n")]
    HypothesisViolated { p: u64, n: u64 },

    #[error("sign vector is not a solution: signed sum = {0}")]
    NotASolution(String),

    /// Two independent routes to the same quantity disagreed.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
