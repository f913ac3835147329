//! Error type shared across the crate.

use thiserror::Error;

/// Errors raised by configuration validation and solvers.
#[derive(Debug, Error)]
pub enum BarrierError {
    /// A physical or normalized parameter is outside its admissible range.
    #[error("invalid parameter {name}: {value} ({reason})")]
    InvalidParameter {
        /// Parameter name as exposed in the public API.
        name: &'static str,
        /// Offending value.
        value: f64,
        /// Human-readable constraint that was violated.
        reason: &'static str,
    },

    /// The linear system of a matching solve was singular to working
    /// precision (degenerate kinematics).
    #[error("matching system is singular at n^2 = {n2}")]
    SingularMatching {
        /// Squared normalized wave number at which the solve failed.
        n2: f64,
    },

    /// A numerical routine failed to reach its target tolerance.
    #[error("{what} did not converge (requested {requested:e}, achieved {achieved:e})")]
    Convergence {
        /// Description of the failing routine.
        what: &'static str,
        /// Requested tolerance.
        requested: f64,
        /// Best tolerance achieved.
        achieved: f64,
    },
}

impl BarrierError {
    pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Self {
        Self::InvalidParameter {
            name,
            value,
            reason,
        }
    }
}
