use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("invalid lifting datum: {}", .0.join("; "))]
    InvalidDatum(Vec<String>),
    #[error("arithmetic error: {0}")]
    Arithmetic(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precision error: requested bound {requested:e} not reached, achieved {achieved:e}")]
    Precision { requested: f64, achieved: f64 },
    #[error("{0} is not an element of the sector's character fiber")]
    NotInFiber(String),
    #[error("inconsistency: {0}")]
    Inconsistency(String),
    #[error("rewriting exceeded {0} steps")]
    RewriteLimit(usize),
}
