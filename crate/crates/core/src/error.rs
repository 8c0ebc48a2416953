use thiserror::Error;

/// Errors raised by the library. Variants name the failure kind; the string
/// carries context for the report.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("specialization pole: {0}")]
    SpecializationPole(String),
    #[error("engine error: {0}")]
    Engine(String),
    #[error("type error: {0}")]
    Type(String),
    #[error("element is not a unit: {0}")]
    NotAUnit(String),
    #[error("not a cocycle: {0}")]
    NotACocycle(String),
    #[error("unsupported degree-zero twist: {0}")]
    UnsupportedDegreeZero(String),
    #[error("theorem violation: {0}")]
    TheoremViolation(String),
    #[error("convention error: {0}")]
    Convention(String),
    #[error("oracle bound exceeded: {0}")]
    OracleBound(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
