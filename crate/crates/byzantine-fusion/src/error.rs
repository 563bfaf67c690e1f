//! Error types shared across the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Structured failures; validation messages name the violated invariant.
#[derive(Debug, Error)]
pub enum Error {
    /// A type invariant was violated at construction.
    #[error("validation error: {0}")]
    Validation(String),

    /// A sensing model maps to an operating point outside (0, 1).
    #[error("degenerate model: {0}")]
    DegenerateModel(String),

    /// Marginals outside the domain an operation is defined on.
    #[error("domain error: {0}")]
    Domain(String),

    /// Closed-form optimizer requires pi11 > pi10.
    #[error("ordering error: closed form requires pi10 < pi11, got pi10={pi10}, pi11={pi11}")]
    Ordering { pi10: f64, pi11: f64 },

    /// Marginals too close to distinguish; caller should use the C = 0 convention.
    #[error("near-degenerate marginals: {0}")]
    NearDegenerate(String),

    /// An iterative routine failed to converge.
    #[error("numeric error: {0}")]
    Numeric(String),

    /// Problem size above the tractability bound.
    #[error("size error: {0}")]
    Size(String),

    /// Sensing model and operating point disagree.
    #[error("consistency error: {0}")]
    Consistency(String),

    /// Config document could not be parsed.
    #[error("config error: {0}")]
    Config(String),

    /// Output could not be written.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }
}
