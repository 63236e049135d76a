use thiserror::Error;

/// Failures reported by the kernel, the condensation step and the drivers.
///
/// Scalar payloads are carried as `f64` regardless of the working type; they
/// are diagnostics, not inputs to further computation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite term at index {index}")]
    NonFiniteTerm { index: u64 },

    #[error("non-finite value at position {position} of the sequence")]
    NonFiniteSequence { position: usize },

    #[error("sequence too short: need at least {needed} entries, got {got}")]
    TooShort { needed: usize, got: usize },

    #[error("negative term {value:e} at index {index}; condensation needs nonnegative terms")]
    NegativeTerm { index: u64, value: f64 },

    #[error("inner condensation sum for A_{j} did not decay before the index cap")]
    InnerNonConvergence { j: u64 },

    #[error("oracle evaluation budget of {budget} terms exhausted")]
    BudgetExhausted { budget: u64 },

    #[error("delta transformation broke down (last healthy estimate: {last_estimate:?})")]
    Breakdown { last_estimate: Option<f64> },

    #[error("remainder estimate vanished at position {position} but later terms are nonzero")]
    InteriorZeroDifference { position: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("quantile scan reached {scanned} terms without reaching p = {p}; tail too heavy")]
    HeavyTail { p: f64, scanned: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
