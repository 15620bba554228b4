use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse classification used by front ends to pick an exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// The input is outside an operation's domain, or a resource cap was hit.
    Domain,
    /// A mathematical invariant that should always hold did not.
    Invariant,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("surds from different fields: Q(sqrt {0}) and Q(sqrt {1})")]
    FieldMismatch(String, String),

    #[error("rational or complex root: discriminant {0} is not a positive non-square")]
    NonIrrationalRoot(String),

    #[error("divergent finite continued fraction: denominator continuant is zero")]
    DivergentFinite,

    #[error(
        "rational limit: periodic continued fraction does not converge to a quadratic irrational"
    )]
    RationalLimit,

    #[error("rational square root: {0} is a square of a rational")]
    RationalSquareRoot(String),

    #[error("arity error: expected at least {expected} entries, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("period cap of {cap} terms exceeded")]
    CapExceeded { cap: usize },

    #[error("invariant violation for n = {n}: {detail}")]
    InvariantViolation { n: String, detail: String },
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::InvariantViolation { .. } => ErrorClass::Invariant,
            _ => ErrorClass::Domain,
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn invariant(n: impl ToString, detail: impl Into<String>) -> Self {
        Error::InvariantViolation {
            n: n.to_string(),
            detail: detail.into(),
        }
    }
}
