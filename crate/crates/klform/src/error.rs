use thiserror::Error;

/// Errors produced by the exact kernels and enumeration guards.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("not a finite-type Cartan matrix: {0}")]
    NotFiniteType(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("size guard exceeded: {what} > {limit}")]
    SizeGuardExceeded { what: String, limit: usize },

    #[error("weight is not dominant: pairing with simple coroot {index} is negative")]
    NonDominant { index: usize },

    #[error(
        "root datum is not semisimple; project the parameter to the semisimple \
         quotient (central directions make the dominant-weight sums diverge)"
    )]
    NotSemisimple,

    #[error("division by zero")]
    DivisionByZero,

    #[error("galois automorphism (n={n}, k={k}) requires gcd(k, n) = 1")]
    InvalidAutomorphism { n: u32, k: u32 },

    #[error("element of level {element} cannot be lifted to automorphism level {automorphism}")]
    GaloisLevelMismatch { element: u32, automorphism: u32 },

    #[error("non-regular parameter: root {root:?} evaluates to 1 identically")]
    NonRegularParameter { root: Vec<i64> },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("elements belong to different root data")]
    MixedRootData,

    #[error("pole at evaluation point v = {0}")]
    PoleAtEvalPoint(String),

    #[error("element is not W-invariant: orbit of {0:?} has unequal coefficients")]
    NonInvariant(Vec<i64>),
}

pub type Result<T> = std::result::Result<T, Error>;
