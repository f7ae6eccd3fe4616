use std::fmt;

/// Errors shared across the crate.
///
/// Numeric routines in this crate are *certified*: they either return an
/// enclosure that provably contains the true value, or they fail loudly.
/// `PrecisionExhausted` is the loud failure: the escalation schedule ran out
/// before the requested decision (a floor, a sign, a branch) could be
/// certified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Input outside the mathematical domain of the operation.
    Domain(String),
    /// The precision-escalation schedule was exhausted before the result
    /// could be certified.
    PrecisionExhausted(String),
    /// A digit window `(c1(n) e^{n^gamma}, c2(n) e^{n^gamma})` contains no
    /// integer at the given index.
    EmptyWindow { index: u64 },
    /// Root bracketing failed: no certified sign change in the search range.
    NoRoot(String),
    /// The point sits on (or cannot be separated from) a branch boundary.
    AmbiguousBoundary(String),
    /// The combination of parameters is outside what the implemented theory
    /// covers.
    Unsupported(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::PrecisionExhausted(msg) => write!(f, "precision exhausted: {msg}"),
            Error::EmptyWindow { index } => {
                write!(f, "digit window at index {index} contains no integer")
            }
            Error::NoRoot(msg) => write!(f, "no root: {msg}"),
            Error::AmbiguousBoundary(msg) => write!(f, "ambiguous boundary: {msg}"),
            Error::Unsupported(msg) => write!(f, "unsupported: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
