//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong across the library.
///
/// Programmer errors (mixing elements of different fields, indexing past a
/// truncation order) panic instead; these variants cover invalid inputs that
/// a caller can meaningfully handle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus has degree {got}, expected {expected}")]
    ModulusDegreeMismatch { got: usize, expected: usize },
    #[error("modulus is not monic or not irreducible over Z_{p}")]
    ReducibleModulus { p: u64 },
    #[error("argument must be nonzero")]
    ZeroElement,
    #[error("{a} and {b} are not coprime")]
    NotCoprime { a: u64, b: u64 },
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("polynomial is not irreducible")]
    NotIrreducible,
    #[error("the polynomial x is excluded here")]
    PolynomialIsX,
    #[error("constant polynomial not allowed here")]
    ConstantPolynomial,
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("constant term must be 1")]
    ConstantTermNotOne,
    #[error("stratum index {i} out of range 0..={max}")]
    IndexOutOfRange { i: u32, max: u32 },
    #[error("series needs an invertible constant term")]
    NonInvertibleConstantTerm,
    #[error("hypothesis violated for {name}: {reason}")]
    HypothesisViolated { name: String, reason: String },
    #[error("modulus M = {m} is unsupported over F_{q}: {reason}")]
    UnsupportedModulus { m: u64, q: u64, reason: String },
    #[error("no decision criterion applies: {0}")]
    UnsupportedCase(String),
    #[error("invalid Macdonald data: {0}")]
    InvalidMacdonald(String),
    #[error("enumeration size exceeds the configured limit ({0})")]
    SizeLimitExceeded(String),
    #[error("computation exceeds the configured budget ({0})")]
    BudgetExceeded(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("parse error: {0}")]
    Parse(String),
}
