//! Error type shared by all numerical operations.

use core::fmt;

use num_complex::Complex64;

/// Failure modes of the numerical core.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument too close to a pole of a meromorphic function.
    Pole {
        /// Offending argument.
        z: Complex64,
    },
    /// Two independent evaluations disagree beyond the diagnostic threshold.
    Accuracy {
        /// Which quantity was checked.
        what: &'static str,
        /// Relative discrepancy found.
        discrepancy: f64,
    },
    /// Adaptive quadrature ran out of subdivisions.
    Quadrature {
        /// Error estimate reached.
        estimate: f64,
        /// Tolerance requested.
        tolerance: f64,
    },
    /// Point lies on a branch cut and no side was supplied.
    Branch,
    /// Point lies too close to a branch point.
    Endpoint,
    /// An extrapolation sequence did not settle.
    Convergence {
        /// Spread between the last extrapolants.
        spread: f64,
    },
    /// A linear system became singular.
    Degenerate,
    /// Point lies on a sector boundary and no side was supplied.
    Sector,
    /// Argument outside the domain of the operation.
    Domain(&'static str),
}

/// Result alias for the numerical core.
pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Pole { z } => write!(f, "pole at {z}"),
            Error::Accuracy { what, discrepancy } => {
                write!(f, "accuracy check failed for {what}: discrepancy {discrepancy:e}")
            }
            Error::Quadrature { estimate, tolerance } => write!(
                f,
                "quadrature did not converge: error estimate {estimate:e} > tolerance {tolerance:e}"
            ),
            Error::Branch => f.write_str("point on the branch cut without a side"),
            Error::Endpoint => f.write_str("point too close to a branch point"),
            Error::Convergence { spread } => {
                write!(f, "extrapolation did not converge: spread {spread:e}")
            }
            Error::Degenerate => f.write_str("singular linear system"),
            Error::Sector => f.write_str("point on a sector boundary without a side"),
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
