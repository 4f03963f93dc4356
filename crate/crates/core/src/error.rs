use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix must be square with dimension at least 1")]
    NotSquare,

    #[error("basis is singular (determinant is zero)")]
    SingularBasis,

    #[error("invalid modulus {0}: must be odd and greater than 2")]
    InvalidModulus(BigInt),

    #[error("value out of range for {digits} balanced digits")]
    ValueOutOfRange { digits: usize },

    #[error("enumeration box holds {points} points, above the cap of {cap}")]
    BoxTooLarge { points: u128, cap: u128 },

    #[error("coefficient box contains no admissible point")]
    EmptyBox,

    #[error("perturbed basis fails the determinant bound 2|det| >= eps^n")]
    DetBoundViolated,

    #[error("decode inconsistency: {0}")]
    Inconsistent(#[from] Inconsistency),
}

/// Ways an optimization oracle's answer can contradict the structure the
/// reductions rely on. Every one of these indicts the oracle, never the
/// pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Inconsistency {
    #[error("nonzero digit at position {position}, which is not a pair-sum exponent")]
    StrayDigit { position: u64 },

    #[error("oracle value needs more digits than the reduction's bounds allow")]
    OutOfRange,

    #[error("squared-norm digit is {0}, outside the admissible range")]
    BadNormDigit(BigInt),

    #[error("x_{index}^2 digit is negative")]
    NegativeSquare { index: usize },

    #[error("x_{index}^2 digit is not a perfect square")]
    NotPerfectSquare { index: usize },

    #[error("all x_i^2 are zero but a nonzero vector was expected")]
    ZeroVector,

    #[error("2 x_{i} x_{j} digit disagrees with the recovered coefficients")]
    PairMismatch { i: usize, j: usize },

    #[error("recovered coefficients do not reproduce the decoded norm or first-row cross terms")]
    ProfileMismatch,
}
