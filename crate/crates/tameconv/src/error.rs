//! Crate-wide error type. Anything a caller can trigger with bad input is an
//! `Error`; violated internal invariants panic instead.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("conductor must be >= 1")]
    BadConductor,
    #[error("coefficient vector has length {got}, conductor {m} needs phi(m) = {want}")]
    BadCoeffLen { m: u64, got: usize, want: usize },
    #[error("{a} is not coprime to the conductor {m}")]
    NotCoprime { a: u64, m: u64 },
    #[error("conductor {small} does not divide {big}")]
    NotSubConductor { small: u64, big: u64 },
    #[error("element does not lie in the conductor-{m} subring")]
    NotInSubring { m: u64 },
    #[error("{p} is not prime")]
    NotPrime { p: u64 },
    #[error("field size {q} exceeds the enumeration bound {bound}")]
    FieldTooLarge { q: u64, bound: u64 },
    #[error("{q} is not a prime power")]
    NotPrimePower { q: u64 },
    #[error("degree must be >= 1")]
    BadDegree,
    #[error("{n} does not divide the multiplicative group order {order}")]
    OrderMismatch { n: u64, order: u64 },
    #[error("evaluation at 0 is not defined")]
    ZeroArgument,
    #[error("character must be nontrivial here")]
    TrivialChar,
    #[error("representation level {level} does not divide q - 1 = {order}")]
    LevelMismatch { level: u64, order: u64 },
    #[error("{n} is not a multiple of the current level {level}")]
    BadLevelRaise { level: u64, n: u64 },
    #[error("component scalar must be nonzero")]
    ZeroScalar,
    #[error("denominator must be positive")]
    ZeroDenominator,
    #[error("t must be a nonzero base-field element")]
    ZeroFiber,
    #[error("n must be prime to the characteristic {p}")]
    NotPrimeToP { p: u64 },
    #[error("invariants are inconsistent: {what}")]
    Inconsistent { what: String },
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, Error>;
