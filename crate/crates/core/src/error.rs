use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("not coprime: gcd({a}, {b}) = {gcd}")]
    NotCoprime { a: String, b: String, gcd: String },
    #[error("invalid modulus {0}: must be at least 1")]
    InvalidModulus(String),
    #[error("pair ({a}, {b}) is not reduced: expected 0 <= a < b")]
    Unreduced { a: String, b: String },
    #[error("no alternate form for zero")]
    NoAlternateForZero,
    #[error("empty period")]
    EmptyPeriod,
    #[error("partial quotient {0} is not a positive integer")]
    InvalidTerm(String),
    #[error("{0} requires odd period length")]
    EvenPeriod(&'static str),
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    #[error("malformed rational {0:?}: expected num/den")]
    ParseRational(String),
    /// A derived quantity broke an identity that holds for every valid input.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
