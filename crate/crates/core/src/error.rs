use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error(
        "{0} is not a prime power; truncate the inner code to the largest prime power below it"
    )]
    NotPrimePower(u64),
    #[error("field of size {size} exceeds the table cap {cap}")]
    FieldTooLarge { size: u128, cap: u64 },
    #[error("invalid field modulus: {0}")]
    InvalidModulus(String),
    #[error("element {value} does not belong to a field of size {q}")]
    ElementOutOfRange { value: u64, q: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("logarithm of zero")]
    LogOfZero,
    #[error("blocklength mismatch: {0} vs {1}")]
    BlocklengthMismatch(usize, usize),
    #[error("invalid codeword: {0}")]
    InvalidCodeword(String),
    #[error("symbol {symbol} out of range for alphabet of size {p}")]
    SymbolOutOfRange { symbol: u64, p: u64 },
    #[error("degenerate parameters: {0}")]
    DegenerateParams(String),
    #[error("degenerate family: {0}")]
    DegenerateFamily(String),
    #[error("truncation target {target} exceeds code size {size}")]
    TargetTooLarge { target: u64, size: u64 },
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),
    #[error("message length {got} does not match dimension {expected}")]
    MessageLengthMismatch { expected: usize, got: usize },
    #[error("code too large for exhaustive enumeration ({0} codewords)")]
    CodeTooLarge(String),
    #[error("outer field size {outer} does not match inner code size {inner}")]
    FieldSizeMismatch { outer: String, inner: String },
    #[error("identifier {id} out of range (code size {size})")]
    IdentifierOutOfRange { id: String, size: String },
    #[error("the two identifiers must differ")]
    SameIdentifier,
    #[error("invalid d' = {dprime}, must lie in [1, {k}]")]
    InvalidDPrime { dprime: u64, k: u64 },
    #[error("no K in [0, W] admits {0} codewords")]
    Infeasible(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("internal error: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
