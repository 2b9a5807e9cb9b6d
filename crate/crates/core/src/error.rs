use thiserror::Error;

/// Every fallible operation in the crate returns this error.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("leading coefficient is not a unit")]
    NonUnitLeading,
    #[error("polynomial must be monic")]
    NotMonic,
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("polynomial is constant")]
    ConstantPolynomial,
    #[error("discriminant is zero")]
    ZeroDiscriminant,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("polynomial is not squarefree modulo {0}")]
    NotSquarefreeMod(String),
    #[error("polynomial is reducible modulo {0}")]
    ReducibleMod(String),
    #[error("modulus {0} is not an admissible prime")]
    BadModulus(String),
    #[error("coefficient exceeds bound at index {index}")]
    BoundExceeded { index: usize },
    #[error("value is not a rational integer")]
    NotRational,
    #[error("level {level} exceeds 2-adic valuation {r} of l-1")]
    InvalidLevel { level: u32, r: u32 },
    #[error("l = {0} is not an odd prime")]
    InvalidEll(u64),
    #[error("prime {0} is bad for this table")]
    BadPrime(String),
    #[error("frobenius class is ambiguous ({0} classes vanish); retry with another hpoly, e.g. x^3+x")]
    AmbiguousClass(usize),
    #[error("no class polynomial vanishes")]
    NoClass,
    #[error("no indexation candidate survives")]
    NoSurvivors,
    #[error("surviving indexations disagree on probe prime {0}")]
    AmbiguousIndexation(u64),
    #[error("determinant class of the frobenius class does not contain {0}")]
    DeterminantMismatch(u64),
    #[error("search cap {0} exceeded")]
    SearchCapExceeded(u64),
    #[error("{0} is not prime")]
    NotPrime(String),
    #[error("T_2 does not act as the expected eigenvalue")]
    DiagonalizationDegenerate,
    #[error("truncation too short: need {need}, have {have}")]
    TruncationTooShort { need: usize, have: usize },
    #[error("unsupported weight {0}")]
    UnsupportedWeight(u32),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse { line, msg: msg.into() }
    }
}
