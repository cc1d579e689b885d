use thiserror::Error;

use crate::interval::{IntervalSet, RationalSet};

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid piecewise-linear homeomorphism: {0}")]
    InvalidHomeo(String),

    #[error("invalid interval set: {0}")]
    InvalidIntervals(String),

    #[error("bump of height {height} on ({lo}, {hi}) is not a homeomorphism")]
    InvalidBump { lo: String, hi: String, height: String },

    #[error("plus part expected, but the map lies below the diagonal on {below}")]
    NotAPlusPart { below: IntervalSet },

    #[error("union of above sets differs from union of below sets on {symmetric_difference}")]
    PreconditionViolated { symmetric_difference: RationalSet },

    #[error("construction did not verify after {rounds} refinement rounds: {detail}")]
    ConstructionFailed { rounds: usize, detail: String },

    #[error("no point separates the remaining functions {remaining:?} at stage {stage}")]
    NotJointlyPositivizable { stage: usize, remaining: Vec<usize> },

    #[error("identity element at input position {0}")]
    IdentityInput(usize),

    #[error("germ ({a}, {b}) is not separated by the evaluation points")]
    Undecided { a: String, b: String },

    #[error("pair {index} does not have matching above/below sets")]
    InvalidPair { index: usize },

    #[error("invalid ordering: {0}")]
    InvalidOrdering(String),

    #[error("ball too small: generator {generator} has {pairs} known orbit pair(s)")]
    BallTooSmall { generator: String, pairs: usize },
}

impl Error {
    /// Stable snake_case tag for machine-readable reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::InvalidHomeo(_) => "invalid_homeo",
            Error::InvalidIntervals(_) => "invalid_intervals",
            Error::InvalidBump { .. } => "invalid_bump",
            Error::NotAPlusPart { .. } => "not_a_plus_part",
            Error::PreconditionViolated { .. } => "precondition_violated",
            Error::ConstructionFailed { .. } => "construction_failed",
            Error::NotJointlyPositivizable { .. } => "not_jointly_positivizable",
            Error::IdentityInput(_) => "identity_input",
            Error::Undecided { .. } => "undecided",
            Error::InvalidPair { .. } => "invalid_pair",
            Error::InvalidOrdering(_) => "invalid_ordering",
            Error::BallTooSmall { .. } => "ball_too_small",
        }
    }
}
