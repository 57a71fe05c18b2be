use thiserror::Error;

/// Errors raised by the library. Verification failures are not errors; they
/// are recorded in a [`crate::VerificationReport`].
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid prime range {lo}..{hi}: {reason}")]
    InvalidRange {
        lo: u64,
        hi: u64,
        reason: &'static str,
    },

    #[error("{value} is not invertible modulo {prime}")]
    NotInvertible { value: u64, prime: u64 },

    #[error("invalid index literal {literal:?}: {reason}")]
    IndexLiteral { literal: String, reason: String },

    #[error("prime {prime} exceeds the bound {bound} of {what}")]
    PrimeTooLarge {
        prime: u64,
        bound: u64,
        what: &'static str,
    },

    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),

    #[error("series over different primes ({left} and {right})")]
    PrimeMismatch { left: u64, right: u64 },

    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: u32, got: u32 },

    #[error("parameter constraint violated: {0}")]
    Parameter(String),

    #[error("series did not reach tolerance {tol:e} within {iterations} terms")]
    Convergence { tol: f64, iterations: usize },

    #[error("{0}")]
    Io(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
