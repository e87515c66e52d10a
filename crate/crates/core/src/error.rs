use alloc::boxed::Box;
use alloc::string::String;
use core::fmt;

use crate::scalar::Scalar;

pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by the exact engines.
///
/// Verification outcomes (axiom failures, bound violations, grading
/// mismatches) are reported through dedicated report types, not through this
/// enum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Series scales whose common multiple is not representable.
    ScaleMismatch {
        left: u64,
        right: u64,
    },
    /// An exponent is not a multiple of `1/scale`.
    OffScale {
        exponent: Scalar,
        scale: u64,
    },
    /// A coefficient was requested beyond the series cutoff.
    OutOfRange {
        exponent: Box<Scalar>,
        cutoff: Box<Scalar>,
    },
    /// A computation needs states above the configured degree cutoff.
    Truncation {
        needed: Box<Scalar>,
        cutoff: Box<Scalar>,
    },
    UnknownLabel(String),
    /// A table is not closed under multiplication or fails an axiom.
    InvalidTable(String),
    /// Verlinde integrality or axiom verification failed.
    Verlinde(String),
    /// Lower bounds exceed upper bounds in the extension solver.
    Contradiction(String),
    InvalidParameter(String),
    /// The lattice Gram matrix is singular or not positive definite.
    Lattice(String),
    /// No conformal vector with the requested charges was found.
    SearchFailure(String),
    /// A spectral decomposition did not close over the candidate eigenvalues.
    Spectral(String),
    Parse(String),
}

impl Error {
    pub fn truncation(needed: Scalar, cutoff: Scalar) -> Self {
        Error::Truncation { needed: Box::new(needed), cutoff: Box::new(cutoff) }
    }

    pub fn out_of_range(exponent: Scalar, cutoff: Scalar) -> Self {
        Error::OutOfRange { exponent: Box::new(exponent), cutoff: Box::new(cutoff) }
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ScaleMismatch { left, right } => {
                write!(f, "series scales {left} and {right} cannot be merged")
            }
            Error::OffScale { exponent, scale } => {
                write!(f, "exponent {exponent} is not a multiple of 1/{scale}")
            }
            Error::OutOfRange { exponent, cutoff } => {
                write!(f, "coefficient at q^{exponent} is beyond the cutoff {cutoff}")
            }
            Error::Truncation { needed, cutoff } => {
                write!(f, "degree {needed} is beyond the cutoff {cutoff}")
            }
            Error::UnknownLabel(l) => write!(f, "unknown label `{l}`"),
            Error::InvalidTable(m) => write!(f, "invalid fusion table: {m}"),
            Error::Verlinde(m) => write!(f, "verlinde verification failed: {m}"),
            Error::Contradiction(m) => write!(f, "contradiction: {m}"),
            Error::InvalidParameter(m) => write!(f, "invalid parameter: {m}"),
            Error::Lattice(m) => write!(f, "lattice error: {m}"),
            Error::SearchFailure(m) => write!(f, "conformal search failed: {m}"),
            Error::Spectral(m) => write!(f, "spectral decomposition failed: {m}"),
            Error::Parse(m) => write!(f, "parse error: {m}"),
        }
    }
}

impl core::error::Error for Error {}
