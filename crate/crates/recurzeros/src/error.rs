//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Parameter outside the family's domain (a2 = 0, c = 0, wrong region, ...).
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    /// Series inversion needs a unit constant term in t.
    #[error("series not invertible: {0}")]
    NonInvertible(String),

    /// The sum-of-recurrence reduction is undefined for a1 = 0.
    #[error("unsupported reduction: {0}")]
    UnsupportedReduction(String),

    /// Evaluation outside a function's domain (negative radicand, sin theta = 0, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// t0(theta) has a pole at theta_a = arccos(b/2a).
    #[error("pole at theta = {theta_a}")]
    Pole { theta_a: f64 },

    /// Iterative solver hit its iteration cap; carries the best iterates (re, im).
    #[error("no convergence after {iterations} iterations")]
    NonConvergence {
        iterations: usize,
        best: Vec<(f64, f64)>,
    },

    /// Bracketing found fewer roots than the theory guarantees.
    #[error("bracket failure: found {found} of {expected} roots ({details})")]
    BracketFailure {
        found: usize,
        expected: usize,
        details: String,
    },

    /// Sturm counting requires endpoints that are not roots.
    #[error("endpoint {endpoint} is a root; {suggestion}")]
    EndpointIsRoot { endpoint: String, suggestion: String },

    /// A witness sweep exhausted its candidates.
    #[error("search failure: {0}")]
    SearchFailure(String),

    /// Empirical verification found no non-real zero up to n_max.
    #[error("verification failure: {0}")]
    VerificationFailure(String),

    /// Statistic undefined (fewer than two roots).
    #[error("undefined statistic: {0}")]
    UndefinedStatistic(String),
}

pub type Result<T> = std::result::Result<T, Error>;
