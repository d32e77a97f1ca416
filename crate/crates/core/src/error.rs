//! Error type shared by all ring operations.

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum RingError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("modulus mismatch: polynomials over F_{0} and F_{1}")]
    ModulusMismatch(u64, u64),

    #[error("division by zero polynomial")]
    PolyDivisionByZero,

    #[error("gcd(0, 0) is undefined")]
    UndefinedGcd,

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("homomorphism invalid: {0}")]
    HomInvalid(String),

    #[error("ideal invalid: {0}")]
    IdealInvalid(String),

    #[error("identity condition violated: {0}")]
    IdentityCondition(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, RingError>;

impl RingError {
    /// True for errors produced by the materialization caps.
    pub fn is_size_guard(&self) -> bool {
        matches!(self, RingError::SizeGuard(_))
    }
}
