use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("field of size {0}^{1} exceeds the configured bound {2}")]
    FieldTooLarge(u64, u32, u64),

    #[error("the zero polynomial has no factorization")]
    ZeroPolynomial,

    #[error("{ell} divides {q}; the multiplicative order is undefined")]
    NotCoprime { q: u64, ell: u64 },

    #[error("group order exceeds the cap of {0} elements")]
    GroupTooLarge(usize),

    #[error("malformed group specification: {0}")]
    MalformedSpec(String),

    #[error("matrix generator is singular")]
    SingularGenerator,

    #[error("element set is not contained in the group")]
    NotInGroup,

    #[error("not a subgroup: {0}")]
    NotSubgroup(String),

    #[error("element is not fixed by the subgroup: {0}")]
    NotFixed(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("precondition not met: {0}")]
    Precondition(String),

    #[error("usage: {0}")]
    Usage(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn contract(msg: impl Into<String>) -> Self {
        Error::Contract(msg.into())
    }
}
