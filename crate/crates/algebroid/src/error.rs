use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong, CLI-mappable by name.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("minimal polynomial is reducible: {0}")]
    ReduciblePolynomial(String),
    #[error("no rational {n}-th root of {elem}")]
    NoRationalRoot { elem: String, n: u64 },
    #[error("Frobenius is undefined in characteristic zero")]
    CharZero,
    #[error("root index divisible by the characteristic with no separable root")]
    PInseparableRoot,
    #[error("variable lists differ: {0} vs {1}")]
    VariableMismatch(String, String),
    #[error("coefficient fields differ")]
    FieldMismatch,
    #[error("composition argument has order zero")]
    OrderZeroArgument,
    #[error("series to invert must have order exactly one")]
    OrderNotOne,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("resultant of a zero polynomial")]
    ZeroPolynomial,
    #[error("parametrization is not primitive (exponent gcd {0})")]
    NonPrimitive(u32),
    #[error("value map sends the nonzero coefficient {0} to zero")]
    ValueMapViolation(String),
    #[error("malformed multiplicity sequence: {0}")]
    MalformedSequence(String),
    #[error("characteristic {p} divides the multiplicity {n}; no Puiseux expansion")]
    BadCharacteristic { p: u64, n: u32 },
    #[error("duplicate branch at positions {0} and {1}")]
    DuplicateBranch(usize, usize),
    #[error("branches coincide; synchronized blowup does not terminate")]
    NonTerminating,
    #[error("the required invariant ({0}) is infinite or undetermined")]
    InfiniteInvariant(String),
    #[error("generators are not minimal: generator {0} is redundant")]
    NotMinimalGenerators(usize),
    #[error("quotient dimension undetermined at k_max; verdicts disagree or cannot be formed")]
    UndeterminedDimension,
    #[error("brute-force search space of {0} candidates exceeds the guard {1}")]
    SearchSpaceTooLarge(u128, u128),
    #[error("operation unavailable in characteristic two")]
    CharTwo,
    #[error("Tjurina number is infinite or undetermined")]
    InfiniteTjurina,
    #[error("subtype cannot be determined from the implemented normal-form data: {0}")]
    UndeterminedSubtype(String),
    #[error("fiber at the sample point is not a primitive parametrization")]
    NonPrimitiveFiber,
    #[error("family is degenerate: both coordinate orders drop at the special point")]
    DegenerateFamily,
    #[error("syntax error at line {line}, column {column}: expected {expected}")]
    SyntaxError {
        line: usize,
        column: usize,
        expected: String,
    },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable code used in CLI JSON output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::NotPrime(_) => "NotPrime",
            Error::ReduciblePolynomial(_) => "ReduciblePolynomial",
            Error::NoRationalRoot { .. } => "NoRationalRoot",
            Error::CharZero => "CharZero",
            Error::PInseparableRoot => "PInseparableRoot",
            Error::VariableMismatch(_, _) => "VariableMismatch",
            Error::FieldMismatch => "FieldMismatch",
            Error::OrderZeroArgument => "OrderZeroArgument",
            Error::OrderNotOne => "OrderNotOne",
            Error::PrecisionExhausted(_) => "PrecisionExhausted",
            Error::ZeroPolynomial => "ZeroPolynomial",
            Error::NonPrimitive(_) => "NonPrimitive",
            Error::ValueMapViolation(_) => "ValueMapViolation",
            Error::MalformedSequence(_) => "MalformedSequence",
            Error::BadCharacteristic { .. } => "BadCharacteristic",
            Error::DuplicateBranch(_, _) => "DuplicateBranch",
            Error::NonTerminating => "NonTerminating",
            Error::InfiniteInvariant(_) => "InfiniteInvariant",
            Error::NotMinimalGenerators(_) => "NotMinimalGenerators",
            Error::UndeterminedDimension => "UndeterminedDimension",
            Error::SearchSpaceTooLarge(_, _) => "SearchSpaceTooLarge",
            Error::CharTwo => "CharTwo",
            Error::InfiniteTjurina => "InfiniteTjurina",
            Error::UndeterminedSubtype(_) => "UndeterminedSubtype",
            Error::NonPrimitiveFiber => "NonPrimitiveFiber",
            Error::DegenerateFamily => "DegenerateFamily",
            Error::SyntaxError { .. } => "SyntaxError",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}
