//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("arity mismatch: {0} vs {1}")]
    ArityMismatch(usize, usize),

    #[error("empty resulting rectangle")]
    EmptyRect,

    #[error("monomial {0} never exits the rectangle")]
    NonExiting(String),

    #[error("geometric series of the unit monomial is undefined")]
    UnitMonomial,

    #[error("infinitely many Pochhammer factors intersect the rectangle")]
    InfiniteFactors,

    #[error("requested rectangle exceeds a validity rectangle: {0}")]
    OutsideValidity(String),

    #[error("variable index {0} out of range for arity {1}")]
    BadVariable(usize, usize),

    #[error("exponent {0} outside the window for variable {1}")]
    OutsideWindow(String, usize),

    #[error("not a valid rational: {0}")]
    BadRational(String),

    #[error("level k = -2 is excluded")]
    CriticalLevel,

    #[error("character carries no level context")]
    MissingContext,

    #[error("operation requires an {0}-side character")]
    WrongSide(&'static str),

    #[error("invalid admissible label: {0}")]
    BadLabel(String),

    #[error("malformed series JSON: {0}")]
    BadJson(String),

    #[error("{0}")]
    Msg(String),
}
