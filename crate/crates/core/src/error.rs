use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("{0} is not a fundamental discriminant")]
    NotFundamental(i64),
    #[error("{0} is not squarefree")]
    NotSquarefree(String),
    #[error("prime {p} does not divide the discriminant {d}")]
    NotRamified { p: u64, d: i64 },
    #[error("form is not primitive")]
    NotPrimitive,
    #[error("form is not positive definite")]
    WrongSign,
    #[error("forms have different discriminants")]
    DiscriminantMismatch,
    #[error("discriminant {0} is outside the supported range")]
    OutOfRange(i64),
    #[error("{0} is a perfect square")]
    PerfectSquare(u64),
    #[error("{x} is not a unit modulo {m}")]
    NotAUnit { x: u64, m: u64 },
    #[error("prime {p} does not divide the conductor {m}")]
    PrimeNotInConductor { p: u64, m: u64 },
    #[error("discriminant exponent {0} is not an integer")]
    NonIntegralDiscriminant(String),
    #[error("field has discriminant 1")]
    DiscriminantOne,
    #[error("rounding residue {residue:e} exceeds tolerance at {bits} bits")]
    PrecisionLoss { residue: f64, bits: u32 },
    #[error("{0} and {1} are not coprime")]
    NotCoprime(u64, u64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
