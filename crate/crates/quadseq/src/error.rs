use std::fmt;

/// Errors surfaced by sequence construction and verification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Modulus is too small or even where an odd modulus is required.
    InvalidModulus(String),
    /// gcd(0, 0) requested.
    UndefinedGcd,
    /// Mismatched lengths, moduli, or a value of the wrong shape.
    ShapeError(String),
    /// Family parameters fail their hypothesis (compositeness, parity, ...).
    InvalidFamily(String),
    /// Field configuration is unusable (non-primitive polynomial, bad decimation).
    InvalidField(String),
    /// A generated pair failed its correlation gate.
    ConstructionRejected(String),
    /// Sequence index outside the defined range.
    InvalidIndex(String),
    /// Tuple-class query mismatched with the family kind.
    InvalidQuery(String),
    /// The spec is constructible but no closed-form divisor applies.
    NoPrediction,
    /// The requested check is not defined for this spec.
    NotApplicable(String),
    /// Malformed textual input.
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidModulus(m) => write!(f, "invalid modulus: {m}"),
            Error::UndefinedGcd => write!(f, "gcd(0, 0) is undefined"),
            Error::ShapeError(m) => write!(f, "shape error: {m}"),
            Error::InvalidFamily(m) => write!(f, "invalid family: {m}"),
            Error::InvalidField(m) => write!(f, "invalid field configuration: {m}"),
            Error::ConstructionRejected(m) => write!(f, "construction rejected: {m}"),
            Error::InvalidIndex(m) => write!(f, "invalid index: {m}"),
            Error::InvalidQuery(m) => write!(f, "invalid query: {m}"),
            Error::NoPrediction => write!(f, "no closed-form prediction for this spec"),
            Error::NotApplicable(m) => write!(f, "not applicable: {m}"),
            Error::Parse(m) => write!(f, "parse error: {m}"),
        }
    }
}

impl std::error::Error for Error {}
