use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{0} is not irreducible")]
    Reducible(&'static str),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("field too large: {0}")]
    FieldTooLarge(String),
    #[error("inverse of zero requested")]
    ZeroInverse,
    #[error("{d} does not divide {n}")]
    NotADivisor { d: usize, n: usize },
    #[error("no (q-1)-th root exists")]
    NoRoot,
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("zero vector does not define a point")]
    ZeroVector,
    #[error("points coincide")]
    CoincidentPoints,
    #[error("enumeration of {needed} objects exceeds budget {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },
    #[error("subspace is not a line")]
    NotALine,
    #[error("expected extension degree {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("gcd condition fails for h = {h}, h' = {h_prime}, n = {n}")]
    InvalidGcd { h: usize, h_prime: usize, n: usize },
    #[error("norm of k is not 1")]
    NormNotOne,
    #[error("ambient space too small for the requested curve")]
    AmbientTooSmall,
    #[error("extension degree must be even")]
    OddDegree,
    #[error("i must lie outside the half-degree subfield")]
    InvalidI,
    #[error("spread index must lie in the half-degree subfield")]
    IndexNotInM,
    #[error("index must be nonzero")]
    ZeroIndex,
    #[error("not a spread: {0}")]
    NotASpread(String),
    #[error("ambient space must be PG(3,q)")]
    WrongAmbient,
    #[error("invalid k: {0}")]
    InvalidK(String),
    #[error("part has {found} points, expected {expected}")]
    WrongCardinality { expected: usize, found: usize },
    #[error("point set is neither a line, a normal rational curve nor an independent tuple")]
    Unclassifiable,
    #[error("malformed input: {0}")]
    Parse(String),
}
