use thiserror::Error;

use crate::arith::Param;

/// Errors raised by the exact and numerical engines.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    #[error("series parameter mismatch: {left:?} vs {right:?}")]
    ParamMismatch { left: Option<Param>, right: Option<Param> },

    #[error("series has a nonzero constant term")]
    NonzeroConstantTerm,

    #[error("element is not in the letter span (some word has length != 1)")]
    NotInLetterSpan,

    #[error("element is not admissible: word `{0}` ends in b")]
    NotAdmissible(String),

    #[error("power exponent must be at least 1, got {0}")]
    NonPositivePower(usize),

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("power sums computed up to s = {have}, but order {need} requires s = {need}")]
    InsufficientPowerSums { have: usize, need: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("summation did not reach tolerance {tolerance:e} within {cap} terms (tail estimate {tail:e})")]
    TailNotReached { tolerance: f64, cap: usize, tail: f64 },

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("unsupported word for depth-one evaluation: `{0}`")]
    UnsupportedWord(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
}

pub type Result<T> = std::result::Result<T, Error>;
