use thiserror::Error;

use crate::partitions::Partition;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,
    #[error("matrix is not positive definite")]
    NotPositiveDefinite,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("partition {0} is not in the avoidance set")]
    NotInP(Partition),
    #[error("zero polynomial has no leading monomial")]
    ZeroPolynomial,
    #[error("leading monomial mismatch: expected {expected}, got {actual}")]
    LeadingMonomialMismatch {
        expected: Partition,
        actual: Partition,
    },
    #[error("limit not stable below q^{0}")]
    StabilizationNotReached(i64),
    #[error("no singular vector found")]
    NoSolution,
    #[error("singular vector space has dimension {0}")]
    NonUniqueSolution(usize),
    #[error("invalid minimal model label ({0}, {1})")]
    InvalidLabel(i64, i64),
    #[error("argument {0} outside the domain (0, 1)")]
    DomainError(f64),
    #[error("fixed-point iteration did not converge after {0} steps")]
    NoConvergence(usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
