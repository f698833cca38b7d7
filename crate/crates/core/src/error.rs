use thiserror::Error;

/// Errors raised across the library.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition of an operation was not met by the caller.
    #[error("contract violation: {0}")]
    Contract(String),

    /// The instance is too large for the requested route.
    #[error("resource limit: {0}")]
    Resource(String),

    /// Conjugation of some Pauli label did not land on a multiple of a Pauli operator.
    #[error("not a Clifford unitary: {0}")]
    NotClifford(String),

    /// A conjugation phase was not an integer power of omega.
    #[error("phase consistency: {0}")]
    PhaseConsistency(String),

    /// The phase point operators do not form an operator basis, or an expansion was ambiguous.
    #[error("not an operator basis: {0}")]
    NotABasis(String),

    /// An input Wigner function has negative entries.
    #[error("negative input Wigner function at {} point(s), first {:?}", .points.len(), .points.first())]
    Negativity { points: Vec<(Vec<u32>, f64)> },

    /// A theorem-backed internal identity failed; indicates a bug.
    #[error("internal consistency: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn contract<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Contract(msg.into()))
}
