use thiserror::Error;

use crate::monoid::MonoidSpec;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid monoid parameters: {0}")]
    InvalidSpec(String),

    #[error("expected {expected} coordinates, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("{0} is not an element of the numerical semigroup")]
    NotInSemigroup(u64),

    #[error("elements belong to different monoids ({left} vs {right})")]
    SpecMismatch { left: MonoidSpec, right: MonoidSpec },

    #[error("operation not defined from {source_spec} to {target_spec}")]
    KindMismatch {
        source_spec: MonoidSpec,
        target_spec: MonoidSpec,
    },

    #[error("lambda must be nonzero")]
    ZeroLambda,

    #[error("interval lower endpoint does not lie strictly below the upper endpoint")]
    EmptyRange,

    #[error("generators {0} and {1} are linearly dependent")]
    LinearlyDependent(usize, usize),

    #[error("{0} and {1} are not coprime")]
    NotCoprime(u64, u64),

    #[error("integer overflow in monoid arithmetic")]
    Overflow,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
