use alloc::string::String;
use core::fmt;

/// Errors reported by the verified computations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Intervals became too wide to decide a predicate or to divide.
    InsufficientPrecision(&'static str),
    /// Argument strictly outside the domain of a function.
    Domain(&'static str),
    /// Shape certification did not succeed.
    CertificationFailed(String),
    /// Malformed or inconsistent triangulation data.
    InvalidTriangulation(String),
    /// The requested object kind or parameter is not supported.
    Unsupported(String),
    /// An iteration budget ran out.
    BudgetExceeded(&'static str),
    /// Decimal parsing failed.
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InsufficientPrecision(what) => write!(f, "insufficient precision: {what}"),
            Error::Domain(what) => write!(f, "domain error: {what}"),
            Error::CertificationFailed(why) => write!(f, "certification failed: {why}"),
            Error::InvalidTriangulation(why) => write!(f, "invalid triangulation: {why}"),
            Error::Unsupported(why) => write!(f, "unsupported: {why}"),
            Error::BudgetExceeded(what) => write!(f, "budget exceeded: {what}"),
            Error::Parse(why) => write!(f, "parse error: {why}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}

impl Error {
    /// True when retrying at a higher precision may help.
    pub fn is_precision(&self) -> bool {
        matches!(self, Error::InsufficientPrecision(_))
    }
}

pub type Result<T> = core::result::Result<T, Error>;
