use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("modulus must be at least 1")]
    ZeroModulus,

    #[error("residue a_{index} = {value} is not reduced: gcd({value}, {q}) > 1")]
    NotReduced { index: usize, value: i64, q: u32 },

    #[error("residue {value} is not in [0, {q})")]
    OutOfRange { value: i64, q: u32 },

    #[error("invalid k = {k}: k exceeds q = {q} or is below 1")]
    InvalidK { k: u32, q: u32 },

    #[error("n = {n} is below q - 1 = {limit}; the minimum-class bound needs n >= q - 1")]
    BelowCorollary2Range { n: u32, limit: u32 },

    #[error("n = {n} exceeds the enumeration limit {limit}")]
    EnumerationLimit { n: u32, limit: u32 },

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("sweep budget exceeded: {required} (configuration, target) pairs > budget {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("structure sum set is neither full nor an interval centered about n/2")]
    ShapeViolation,

    #[error("extremal generator self-check failed: witness count {observed} != formula {expected}")]
    WitnessMismatch { observed: String, expected: String },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
