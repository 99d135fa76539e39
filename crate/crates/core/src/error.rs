use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("tower mismatch: {0}")]
    TowerMismatch(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field too large for table arithmetic: q = {0}")]
    FieldTooLarge(u64),
    #[error("polynomial is not irreducible: {0}")]
    Reducible(String),
    #[error("polynomial is not monic: {0}")]
    NotMonic(String),
    #[error("degree too small: {0}")]
    DegreeTooSmall(String),
    #[error("element is not a root of P: {0}")]
    NotARoot(String),
    #[error("kernel is the whole space")]
    ZeroOperator,
    #[error("inseparable division polynomial: a(z) = 0")]
    InseparableDivision,
    #[error("direct sum violated: {0}")]
    DirectSumViolated(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("outside the admissible range: m = {0} < 4")]
    BelowAdmissibleRange(usize),
    #[error("too large for exhaustive enumeration: {needed} candidates exceed guard {guard}")]
    GuardExceeded { needed: u128, guard: u128 },
    #[error("no prime P found: candidate space exhausted")]
    NoPrimeFound,
    #[error("construction broken, P invalid: {0}")]
    ConstructionBroken(String),
    #[error("invalid explicit basis: {0}")]
    InvalidBasis(String),
    #[error("block {block} has tau-degree {degree}, exceeding r - 1 = {max}")]
    BlockDegreeOverflow {
        block: usize,
        degree: usize,
        max: usize,
    },
    #[error("Moore matrix singular: points are F_q-linearly dependent")]
    MooreSingular,
    #[error("insufficient survivors in group {group}: {survivors} < r = {needed}")]
    InsufficientSurvivors {
        group: usize,
        survivors: usize,
        needed: usize,
    },
    #[error("erased entries present")]
    ErasuresPresent,
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
