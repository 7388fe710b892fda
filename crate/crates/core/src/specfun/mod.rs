//! Special functions and adaptive quadrature backing the offload analytics.
//!
//! Everything here is self-contained: log-gamma via a Lanczos approximation,
//! the regularized incomplete beta via a continued fraction, and an adaptive
//! Gauss-Kronrod integrator for the smooth exponential-polynomial integrands
//! that show up in the communication-time variance.

mod betainc;
mod gamma;
mod quad;

pub use betainc::reg_inc_beta;
pub use gamma::log_gamma;
pub use quad::{integrate, integrate_with, QuadOptions, QuadratureResult};

use std::fmt;

/// Errors from special-function evaluation and quadrature.
#[derive(Debug, Clone, PartialEq)]
pub enum SpecfunError {
    /// An argument lies outside the function's domain.
    Domain(&'static str),
    /// An iterative evaluation exhausted its budget before reaching the
    /// requested tolerance; `value` and `error_estimate` carry the best
    /// estimate at the point of failure.
    NoConvergence {
        what: &'static str,
        evaluations: usize,
        value: f64,
        error_estimate: f64,
    },
}

impl fmt::Display for SpecfunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecfunError::Domain(msg) => write!(f, "domain error: {msg}"),
            SpecfunError::NoConvergence {
                what,
                evaluations,
                value,
                error_estimate,
            } => write!(
                f,
                "{what} did not converge after {evaluations} evaluations \
                 (best estimate {value}, error estimate {error_estimate})"
            ),
        }
    }
}

impl std::error::Error for SpecfunError {}
