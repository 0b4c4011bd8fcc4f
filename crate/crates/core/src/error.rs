use alloc::string::String;

use thiserror::Error;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    #[error("weight parameter λ = {lambda} must exceed p - 1 = {bound}")]
    WeightOutOfRange { lambda: f64, bound: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("variable x{index} out of range for a rank-{rank} symbol")]
    VariableOutOfRange { index: usize, rank: usize },

    #[error("unknown function `{0}`")]
    UnknownFunction(String),

    #[error("symbol `{0}` is not finite on the unit cube")]
    NonFiniteSymbol(String),

    #[error("symbol `{0}` is not symmetric under coordinate permutations")]
    AsymmetricSymbol(String),

    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("numerical failure: {0}")]
    Numeric(String),
}

impl Error {
    /// True for failures of the numerics themselves, as opposed to bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(self, Error::Numeric(_))
    }
}
