use thiserror::Error;

/// Errors produced by the solvers, generators and file layer.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid range: {0}")]
    InvalidRange(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("{kind} index {index} out of bounds (len {len})")]
    IndexOutOfBounds {
        kind: &'static str,
        index: usize,
        len: usize,
    },

    #[error("alpha = {alpha} must lie in [1, {k}]")]
    AlphaOutOfRange { alpha: usize, k: usize },

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Brute-force enumeration would exceed the configured subset budget.
    #[error("enumeration needs {subsets} subsets, over the limit of {limit}")]
    BudgetExceeded { subsets: u128, limit: u128 },

    /// The grid side chosen for an exact solve is above the configured cap.
    #[error("grid side h = {h} exceeds the exact-solver cap {cap}; use a larger epsilon")]
    GridTooLarge { h: usize, cap: usize },

    #[error("generator gave up after {attempts} attempts: {reason}")]
    RetryCapExceeded { attempts: usize, reason: String },

    /// An internal self-check failed. Always a bug.
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors that mean "this input is fine but too large for the
    /// requested exact method".
    pub fn is_infeasible(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. } | Error::GridTooLarge { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
