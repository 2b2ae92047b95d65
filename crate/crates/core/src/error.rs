use thiserror::Error;

/// Errors raised by the semigroup, polynomial and homology layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty generator list")]
    EmptyInput,
    #[error("generator {0} is not positive")]
    NonPositive(i64),
    #[error("generators are not coprime (gcd = {0})")]
    NonCoprime(u64),
    #[error("{0} is not an element of the semigroup")]
    NotInSemigroup(i64),
    #[error("{0} is a minimal generator of the semigroup")]
    IsGenerator(u64),
    #[error("{0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("ideal is not homogeneous")]
    NonHomogeneousInput,
    #[error("variable count mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("cannot parse polynomial `{input}`: {reason}")]
    Parse { input: String, reason: String },
    #[error("{0} is not a prime below 2^31")]
    BadPrime(u64),
    #[error("Hilbert function oracle mismatch: {0}")]
    OracleMismatch(String),
    #[error("embedding dimension {embdim} exceeds the permutation search limit {limit}")]
    EmbdimTooLarge { embdim: usize, limit: usize },
    #[error("Betti number ({i},{j}) lies outside the computed range")]
    BandTooSmall { i: usize, j: usize },
    #[error("hypothesis failed: {0}")]
    HypothesisFailed(String),
    #[error("illegal parameters: {0}")]
    IllegalParameters(String),
    #[error("integers are not pairwise coprime")]
    NotPairwiseCoprime,
    #[error("expected embedding dimension {expected}, found {found}")]
    WrongEmbdim { expected: usize, found: usize },
    #[error("semigroup is not symmetric")]
    NotSymmetric,
    #[error("semigroup is not pseudo-symmetric")]
    NotPseudoSymmetric,
    #[error("semigroup is a complete intersection")]
    IsCI,
}

pub type Result<T> = std::result::Result<T, Error>;
