//! Error vocabulary shared by every module.
//!
//! "Not covered" outcomes are data, not errors, and live next to the
//! operations that produce them; this enum only carries genuine failures.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument violates a documented precondition.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The caller used the wrong constructor branch for this winding class.
    #[error("wrong branch: {0}")]
    WrongBranch(String),

    /// A seeded search ran out of its attempt budget.
    #[error("search exhausted: {0}")]
    SearchExhausted(String),

    /// Parallel lists (punctures and windings) disagree in length.
    #[error("shape error: {0}")]
    ShapeError(String),

    /// The second component has a zero or pole inside the domain.
    #[error("invalid second component: {0}")]
    InvalidSecondComponent(String),

    /// An internal identity failed; signals a bug, not bad input.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    /// A numeric root sits too close to an exact point to classify.
    #[error("ambiguous root: {0}")]
    AmbiguousRoot(String),

    /// Fiber values overlap within certification radii at max precision.
    #[error("ambiguous fiber: {0}")]
    AmbiguousFiber(String),

    /// Distance to a boundary circle is undecidable at max precision.
    #[error("ambiguous boundary: {0}")]
    AmbiguousBoundary(String),

    /// The reshaping shift is too large for the injectivity budget.
    #[error("shift too large: {0}")]
    ShiftTooLarge(String),

    /// Interval Newton contraction failed at the top of the precision ladder.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    /// A resultant was requested for inputs of y-degree zero.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
}
