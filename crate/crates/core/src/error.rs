use thiserror::Error;

use crate::families::PairStatus;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// t1·t2·t3 = ±1, so a denominator of the triple parametrization vanishes.
    #[error("degenerate parameters: {0}")]
    DegenerateParameters(String),

    #[error("degenerate triple: {0}")]
    DegenerateTriple(String),

    #[error("degenerate chart: {0}")]
    DegenerateChart(String),

    #[error("singular curve at k = {k}: factors {which} coincide")]
    SingularCurve { k: String, which: &'static str },

    #[error("point is not on the curve")]
    NotOnCurve,

    #[error("not constructible: {reason}")]
    NotConstructible {
        reason: String,
        statuses: Option<[PairStatus; 6]>,
    },

    #[error("trivial solution: x^2 = 1")]
    TrivialSolution,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("degenerate instance: {0}")]
    DegenerateInstance(String),

    #[error("parameter {param} = {value} is excluded")]
    ExcludedParameter { param: &'static str, value: String },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("fixture row {row} failed: {reason}")]
    FixtureFailure { row: usize, reason: String },
}

pub type Result<T> = std::result::Result<T, Error>;
