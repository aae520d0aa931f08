use thiserror::Error;

use crate::linalg::Rational;

#[derive(Debug, Error)]
pub enum Error {
    #[error("SUM_NONZERO: tau components sum to {0}, expected 0")]
    SumNonzero(Rational),
    #[error("invalid rational {0:?}")]
    ParseRational(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not a derivation: {0}")]
    NotDerivation(String),
    #[error("derivation is not in the span of the g2 basis")]
    NotInSpan,
    #[error("not an algebra automorphism of the octonions: {0}")]
    NotAutomorphism(String),
    #[error("derivations are not closed under the bracket")]
    NotBracketClosed,
    #[error("INTERNAL: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::SumNonzero(_) | Error::ParseRational(_) | Error::InvalidInput(_) => 2,
            _ => 3,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
