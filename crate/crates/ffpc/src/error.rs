use thiserror::Error;

/// Errors produced by the library. CLI exit codes are derived from these:
/// usage/validation problems map to exit code 2, budget refusals to 3.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field size {q} exceeds the supported desk-scale limit 2^16")]
    FieldTooLarge { q: u64 },
    #[error("modulus must be monic of degree {expected}, got degree {got}")]
    ModulusDegree { expected: u32, got: u32 },
    #[error("modulus is reducible over F_{p}")]
    ReducibleModulus { p: u64 },
    #[error("element encoding {value} out of range for field of size {q}")]
    ElementRange { value: u64, q: u64 },
    #[error("operands belong to different fields or levels")]
    Mismatch,
    #[error("polynomial must have degree >= 1")]
    ConstantPolynomial,
    #[error("{what} needs {needed} > budget {budget}; raise the budget or pass --force")]
    BudgetExceeded {
        what: &'static str,
        needed: u64,
        budget: u64,
    },
    #[error("order {order} does not divide {target}")]
    OrderNotDividing { order: u32, target: u32 },
    #[error("{0} is not coprime to {1}")]
    NotCoprime(u64, u64),
    #[error("operation requires p > level (p = {p}, level = {level})")]
    RequiresLargeCharacteristic { p: u64, level: u32 },
    #[error("operation requires characteristic {expected}, field has characteristic {got}")]
    WrongCharacteristic { expected: &'static str, got: u64 },
    #[error("operation requires level {expected}, got {got}")]
    WrongLevel { expected: &'static str, got: u32 },
    #[error("the trivial character has L-function 1/(1-qu), not a polynomial")]
    TrivialCharacter,
    #[error("character is not primitive at its level")]
    NotPrimitive,
    #[error("N must be even, got {0}")]
    OddUnityOrder(u64),
    #[error("no character with index {index}; the group has {count} characters")]
    BadCharacterIndex { index: u64, count: u64 },
    #[error("{0}")]
    Refusal(String),
    #[error("exact identity failed: {0}")]
    IdentityFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
