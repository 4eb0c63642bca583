use alloc::string::String;
use core::fmt;

use crate::algebra::Marker;

/// Failures raised by the core library.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Tree enumeration beyond the configured size cap.
    CapExceeded { n: usize, cap: usize },
    /// Malformed tree text; `position` is a byte offset.
    Parse {
        position: usize,
        message: &'static str,
    },
    /// Tree text nests deeper than the caller allowed.
    TooDeep { depth: usize, limit: usize },
    /// `series_sqrt` needs a constant coefficient of exactly 1.
    SqrtConstantTerm,
    /// `series_inverse` needs a nonzero rational constant coefficient.
    NotInvertible,
    /// A fixed-point map changed an already settled coefficient.
    NotContractive { iteration: usize, index: usize },
    /// A series still carries a marker the operation cannot accept.
    UnexpectedMarker { marker: Marker, index: usize },
    /// Reversal of `t` into `q` found a degree larger than the `x` exponent.
    DegreeOverflow { index: usize, degree: u32 },
    /// A closed form that must hold by construction did not.
    IdentityFailed { theorem: String, index: usize },
    /// Invalid argument combination.
    InvalidArgument(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::CapExceeded { n, cap } => {
                write!(f, "refusing to enumerate trees of size {n}: cap is {cap}")
            }
            Error::Parse { position, message } => {
                write!(f, "tree parse error at byte {position}: {message}")
            }
            Error::TooDeep { depth, limit } => {
                write!(f, "tree nesting depth {depth} exceeds limit {limit}")
            }
            Error::SqrtConstantTerm => {
                f.write_str("series square root requires constant coefficient 1")
            }
            Error::NotInvertible => {
                f.write_str("series inverse requires a nonzero rational constant coefficient")
            }
            Error::NotContractive { iteration, index } => write!(
                f,
                "fixed-point map is not contractive: iteration {iteration} changed coefficient {index}"
            ),
            Error::UnexpectedMarker { marker, index } => {
                write!(f, "coefficient of x^{index} still depends on {marker}")
            }
            Error::DegreeOverflow { index, degree } => write!(
                f,
                "coefficient of x^{index} has t-degree {degree} > {index}; cannot reverse into q"
            ),
            Error::IdentityFailed { theorem, index } => {
                write!(f, "identity for theorem {theorem} fails at x^{index}")
            }
            Error::InvalidArgument(msg) => f.write_str(msg),
        }
    }
}

impl core::error::Error for Error {}
