use thiserror::Error;

/// Errors raised by the evaluation routines.
///
/// Every variant names the precondition that failed so that sweep drivers can
/// record it verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: String },

    #[error("{function} argument {at} is within {radius:e} of a pole")]
    PoleProximity {
        function: &'static str,
        at: String,
        radius: f64,
    },

    #[error("kernel base 1 + u^2 + 2u*xi = {base:e} is not positive (u = {u}, xi = {xi})")]
    SingularBase { u: f64, xi: f64, base: f64 },

    #[error("Weierstrass kernel is singular at coincident points (r = t = {r}, psi = 0)")]
    CoincidentPoints { r: f64 },

    #[error("{what}: failed to converge after {iterations} steps (estimate {estimate:e})")]
    Convergence {
        what: &'static str,
        iterations: usize,
        estimate: f64,
    },

    #[error("Re s = {re_s} is outside the strip ({lo}, {hi}) required by {what}")]
    StripViolation {
        what: &'static str,
        re_s: f64,
        lo: f64,
        hi: f64,
    },

    #[error("derivative order {order} exceeds the cap {cap}")]
    CapExceeded { order: usize, cap: usize },

    #[error("invalid argument: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
