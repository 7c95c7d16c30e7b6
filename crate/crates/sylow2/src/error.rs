use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors shared across the whole crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("p must be an odd prime, got {0}")]
    InvalidPrime(u64),

    #[error("exponent n must be at least 1")]
    InvalidExponent,

    #[error("modulus too large: p^(2n) must fit in 63 bits (p={p}, n={n})")]
    ModulusTooLarge { p: u64, n: u32 },

    #[error("context mismatch: expected p={expected}, got p={got}")]
    ContextMismatch { expected: u64, got: u64 },

    #[error("invalid reduction: target exponent {to} must be smaller than source exponent {from}")]
    InvalidReduction { from: u32, to: u32 },

    #[error("singular matrix: determinant {det} is not a unit mod {modulus}")]
    SingularMatrix { det: u64, modulus: u64 },

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("enumeration budget exceeded: needs {required} elements, budget is {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("element is not a member of the group")]
    NotAMember,

    #[error("subgroup is not contained in the ambient group")]
    NotContained,

    #[error("denominator is not normal in the numerator")]
    NotNormal,

    #[error("group of order {order} is not a {p}-group")]
    NotAPGroup { order: u64, p: u64 },

    #[error("structure error: {0}")]
    Structure(String),

    #[error("invalid actor: {0}")]
    InvalidActor(String),

    #[error("out of range: {0}")]
    OutOfRange(String),

    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error("cache error: {0}")]
    Cache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
