//! Error type shared by every module.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("series order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("not invertible: {0}")]
    NotInvertible(String),
    #[error("index {k} out of range 1..={n}")]
    IndexOutOfRange { k: usize, n: usize },
    #[error("non-exact division: {0}")]
    NonExactDivision(String),
    #[error("malformed cluster variable: {0}")]
    MalformedVariable(String),
    #[error("translate undefined: {0}")]
    TranslateUndefined(String),
    #[error("classification inconclusive: {0}")]
    Inconclusive(String),
    #[error("not indecomposable: {0}")]
    NotIndecomposable(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("polynomial count violated: {0}")]
    PolynomialCount(String),
    #[error("non-transversal crossing: {0}")]
    NonTransversal(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("endpoint not in general position: {0}")]
    NotGeneric(String),
    #[error("no bending: {0}")]
    NoBending(String),
    #[error("not admissible: {0}")]
    NotAdmissible(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

impl Error {
    /// Process exit status used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Resource(_) => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::Dimension { expected, got })
    }
}
