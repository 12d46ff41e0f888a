use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime in [2, 2^62)")]
    InvalidModulus(u64),
    #[error("field modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u64, right: u64 },
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid shift: {0}")]
    InvalidShift(String),
    #[error("row {0} is zero and has no pivot")]
    ZeroRow(usize),
    #[error("singular matrix")]
    Singular,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("inconsistent minimal degree: {0}")]
    InconsistentMinimalDegree(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl Error {
    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
