use thiserror::Error;

/// Errors raised by the exact-arithmetic kernels and the computations built on them.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("rational function with zero denominator")]
    ZeroDenominator,
    #[error("rational function has a pole at q = {0}")]
    Pole(String),
    #[error("q-binomial [{n} choose {k}] requires k <= n")]
    InvalidBinomial { n: usize, k: usize },
    #[error("product of polynomials must have at least one factor")]
    EmptyProduct,
    #[error("linear factor product has repeated root {0}")]
    DuplicateRoot(String),
    #[error("series coefficient domains differ")]
    DomainMismatch,
    #[error("series constant term is not invertible")]
    NonUnit,
    #[error("division by z requires a zero constant term")]
    NonzeroConstantTerm,
    #[error("q must be greater than 1, got {0}")]
    QNotAboveOne(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("could not certify the sign of sin_q at x = {x} within {terms} terms")]
    CertificationFailure { x: String, terms: usize },
    #[error("zero scan stopped after {found} of {wanted} zeros")]
    ScanLimit { found: usize, wanted: usize },
    #[error("cannot parse {0:?} as a rational number")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
