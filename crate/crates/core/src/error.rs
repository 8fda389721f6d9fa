use thiserror::Error;

/// Errors produced by the analysis engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum WmvError {
    /// A probability (or derived parameter) lies outside its legal range.
    #[error("{field}[{index}] = {value} is outside {expected}")]
    Domain {
        field: &'static str,
        index: usize,
        value: f64,
        expected: &'static str,
    },

    #[error("{field}: expected {expected} entries, found {found}")]
    LengthMismatch {
        field: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("{field} must not be empty")]
    Empty { field: &'static str },

    /// Exact enumeration over 2^n realizations (or vertices) is refused above the limit.
    #[error("{what}: {n} sources exceeds the enumeration limit of {limit}")]
    Capacity {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("support product {size} exceeds the exact-mode limit of {limit}")]
    SupportOverflow { size: u128, limit: u128 },

    #[error("invalid distribution for source {index}: {reason}")]
    InvalidDistribution { index: usize, reason: String },

    /// The unbiasedness precondition E(P) = trust fails.
    #[error("distribution mean {mean} for source {index} differs from trust {trust}")]
    MeanMismatch { index: usize, mean: f64, trust: f64 },

    #[error("source index {index} out of range for {n} sources")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("grid: {reason}")]
    InvalidGrid { reason: String },

    #[error("grid has {points} points; at least 3 are needed for shape checks")]
    GridTooCoarse { points: usize },

    #[error("{0}")]
    InvalidArgument(String),
}

impl WmvError {
    /// True for errors caused by exceeding an enumeration budget.
    pub fn is_capacity(&self) -> bool {
        matches!(
            self,
            WmvError::Capacity { .. } | WmvError::SupportOverflow { .. }
        )
    }
}

pub type Result<T, E = WmvError> = std::result::Result<T, E>;
