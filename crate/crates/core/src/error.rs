use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(i64),
    #[error("level {0} is too small (need a prime N >= 5)")]
    LevelTooSmall(u64),
    #[error("hypothesis p || N-1 violated for N = {n}, p = {p}")]
    HypothesisViolated { n: u64, p: u64 },
    #[error("not a square: {a} mod {q}")]
    NotASquare { a: i64, q: u64 },
    #[error("{x} is not invertible modulo {n}")]
    NotInvertible { x: i64, n: u64 },
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("discriminant {d} is not admissible for N = {n}, p = {p}: {reason}")]
    InadmissibleDiscriminant {
        d: i64,
        n: u64,
        p: u64,
        reason: &'static str,
    },
    #[error("gcd({a}, {m}) != 1")]
    NotCoprime { a: i64, m: i64 },
    #[error("vector is not in the lattice")]
    NotInLattice,
    #[error("lattice W_{0} does not have full rank")]
    DegenerateFiltration(usize),
    #[error("Eisenstein generators not saturated: adding T_{0} changed W_1")]
    GeneratorSaturation(u64),
    #[error("p-part of M/W_1 is not cyclic of order p (invariants {0})")]
    UnexpectedQuotient(String),
    #[error("uninformative samples: every log(d) vanishes")]
    UninformativeSamples,
    #[error("inconsistent Selmer input: {0}")]
    InconsistentSelmerInput(&'static str),
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("operation {0} requires the plus sign context")]
    WrongSign(&'static str),
    #[error("cache integrity check failed for {0}")]
    CacheIntegrity(String),
    #[error("cache version {found} does not match expected version {expected}")]
    CacheVersion { found: u64, expected: u64 },
    #[error("malformed cache: {0}")]
    CacheFormat(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
