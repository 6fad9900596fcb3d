use thiserror::Error;

/// Errors raised by the arithmetic kernels, evaluators and the harness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{a} is not invertible modulo {m}")]
    NotInvertible { a: String, m: String },
    #[error("denominator is divisible by {p}")]
    PoleAtP { p: u64 },
    #[error("{p} is not {requirement}")]
    BadResidueClass { p: u64, requirement: &'static str },
    #[error("{a} is not coprime to {m}")]
    NotCoprime { a: String, m: u64 },
    #[error("prime mismatch: {left} vs {right}")]
    PrimeMismatch { left: u64, right: u64 },
    #[error("value is not a {p}-adic unit")]
    NonUnit { p: u64 },
    #[error("value is not divisible by {p}^{k}")]
    NotDivisible { p: u64, k: u32 },
    #[error("precision exhausted: need {needed} digits, have {available}")]
    PrecisionExhausted { needed: i64, available: i64 },
    #[error("argument outside the domain of {0}")]
    OutOfDomain(&'static str),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("L_p(s, 1) has a pole at s = 1")]
    PoleAtOne,
    #[error("invalid context: {0}")]
    BadContext(String),
    #[error("unsupported character: {0}")]
    UnsupportedCharacter(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("range too large: {0}")]
    RangeTooLarge(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("invalid prime range: {0}")]
    InvalidRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
