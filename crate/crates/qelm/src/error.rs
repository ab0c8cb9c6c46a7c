//! Error type shared across the crate.

/// Errors reported by library operations.
///
/// Contract violations a caller can hit with user-supplied data return one of
/// these; internal invariant violations panic via `assert!`.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Input matrix deviates from Hermitian symmetry beyond tolerance.
    #[error("matrix is not Hermitian (max |A - A\u{2020}| element = {deviation:.3e})")]
    NotHermitian {
        /// Largest absolute element of `A - A†`.
        deviation: f64,
    },

    /// A dimension argument was zero or inconsistent with the data.
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    /// Text form of a Pauli string failed to parse.
    #[error("invalid Pauli string {input:?}: {reason}")]
    PauliParse {
        /// Offending input text.
        input: String,
        /// What was wrong with it.
        reason: String,
    },

    /// Channel parameters violate complete positivity.
    #[error("Pauli channel is not completely positive: Kraus weight {weight:.3e} < 0")]
    NotCompletelyPositive {
        /// The negative Kraus weight that was found.
        weight: f64,
    },

    /// Relative entropy diverges because supports are incompatible.
    #[error("relative entropy diverges: state has weight {weight:.3e} outside the reference support")]
    SupportMismatch {
        /// Weight of the state outside the reference support.
        weight: f64,
    },

    /// Shot sampling needs at least one shot.
    #[error("shot count must be at least 1")]
    ZeroShots,

    /// Operation requires a product encoding but got a layered one.
    #[error("{0} requires a product encoding with known generator eigenvalues")]
    NotProductEncoding(&'static str),

    /// Spectra passed to a joint analysis disagree on their frequency sets.
    #[error("frequency sets differ across spectra: {0}")]
    FrequencySetMismatch(String),

    /// Coefficient of determination is undefined for constant targets.
    #[error("r2 score is undefined: target values are constant")]
    ConstantTargets,

    /// Surrogate sampling weights are all zero.
    #[error("cannot sample frequencies: all spectrum weights are zero")]
    AllZeroWeights,

    /// Requested problem size exceeds the configured resource budget.
    #[error("budget exceeded: {0}")]
    Budget(String),

    /// Configuration file or overrides failed validation.
    #[error("config error: {0}")]
    Config(String),

    /// Eigenvalue iteration failed to converge.
    #[error("eigensolver did not converge within {0} iterations")]
    NoConvergence(usize),

    /// Underlying I/O failure while reading or writing experiment files.
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    /// JSON (de)serialization failure.
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
