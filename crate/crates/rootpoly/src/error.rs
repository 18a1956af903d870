use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parameter degeneracy: {0}")]
    ParameterDegeneracy(String),
    #[error("arity mismatch: expected {expected} coordinates, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("regularity violation: eps({lambda}) - eps({mu}) vanishes")]
    RegularityViolation { mu: String, lambda: String },
    #[error("rank guard exceeded: {0}")]
    RankGuardExceeded(String),
    #[error("input is not Weyl-invariant")]
    NotInvariant,
    #[error("integer parameters required: {0}")]
    NonIntegerParams(String),
    #[error("invalid root system: {0}")]
    InvalidSpec(String),
    #[error("invalid minuscule choice: {0}")]
    InvalidChoice(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
}
