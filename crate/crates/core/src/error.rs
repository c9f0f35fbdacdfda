use thiserror::Error;

/// Failure modes shared by every kernel in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole at x = {0}")]
    Pole(f64),
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("series diverges: {0}")]
    SeriesDivergence(String),
    #[error("tolerance not met: {0}")]
    ToleranceNotMet(String),
    #[error("no matching numerator/denominator pair")]
    NoCancellation,
    #[error("no reducible parameter pair")]
    NoReduction,
    #[error("non-generic parameters: {0}")]
    NonGenericParameters(String),
    #[error("parameter too close to a singular value: {0}")]
    NearSingularParameter(String),
    #[error("branch mismatch: {0}")]
    BranchMismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("divergent integral: {0}")]
    DivergentSpec(String),
}

impl Error {
    /// Evaluator limits that a harness reports as skipped rather than failed.
    pub fn is_evaluator_limit(&self) -> bool {
        matches!(
            self,
            Error::NonGenericParameters(_) | Error::NearSingularParameter(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
