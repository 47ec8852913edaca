use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("polynomials belong to different rings ({left} vs {right} variables)")]
    RingMismatch { left: usize, right: usize },

    #[error("exponent overflow")]
    ExponentOverflow,

    #[error("polynomial is not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("quotient is not Artinian ({0})")]
    NotArtinian(String),

    #[error("algebra is not level: socle in degrees {0:?}")]
    NotLevel(Vec<i32>),

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("computation infeasible at this size: {what} (threshold {threshold})")]
    Infeasible { what: String, threshold: usize },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("truncation orders differ: {left} vs {right}")]
    TruncationMismatch { left: usize, right: usize },

    #[error("mismatch: {0}")]
    Mismatch(String),
}
