use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("exponent {exponent} is not a unit modulo {conductor}")]
    BadExponent { exponent: i64, conductor: u64 },
    #[error("conductor {from} does not divide {to}")]
    NotDivisible { from: u64, to: u64 },
    #[error("conductor {conductor} exceeds the ceiling {ceiling}")]
    ConductorOverflow { conductor: u64, ceiling: u64 },
    #[error("no power up to {bound} is scalar")]
    OrderBoundExceeded { bound: u64 },
    #[error("group order exceeds the ceiling {ceiling}")]
    OrderCeilingExceeded { ceiling: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("the zero vector is not a projective point")]
    ZeroVector,
    #[error("eigenvalues are not expressible in a cyclotomic field")]
    NonCyclotomicSpectrum,
    #[error("point is not fixed by the matrix")]
    NotFixed,
    #[error("element is not a member of the group")]
    NotAMember,
    #[error("element set is not a subgroup")]
    NotASubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("prime {prime} does not divide the group order {order}")]
    PrimeDoesNotDivide { prime: u64, order: usize },
    #[error("group is not abelian")]
    NotAbelian,
    #[error("group is not diagonal")]
    NotDiagonal,
    #[error("could not classify group: {0}")]
    Unclassifiable(String),
    #[error("degree {0} is divisible by 3")]
    DegreeDivisibleBy3(u64),
    #[error("congruence conditions fail: {0}")]
    BadCongruence(String),
    #[error("constructed group of order {order} exceeds the ceiling {ceiling}")]
    CeilingExceeded { order: usize, ceiling: usize },
    #[error("invalid multiplication table: {0}")]
    InvalidTable(String),
    #[error("invalid involution: {0}")]
    InvalidInvolution(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
