use thiserror::Error;

use crate::superpoly::Frame;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("generator count mismatch: {left} vs {right}")]
    Dimension { left: usize, right: usize },

    #[error("generator index {index} out of range for {count} generators")]
    GeneratorIndex { index: usize, count: usize },

    #[error("element is not invertible (|body| = {body:e})")]
    NotInvertible { body: f64 },

    #[error("{op} requires an even element, got {parity:?}")]
    Parity {
        op: &'static str,
        parity: crate::grassmann::Parity,
    },

    #[error("logarithm of an element with zero body")]
    LogDomain,

    #[error("exponent overflow at X={x}, T={t}: term with k={k}, w={w} has Re(kX+wT)={re:.3}")]
    Range {
        x: f64,
        t: f64,
        k: String,
        w: String,
        re: f64,
    },

    #[error("frame mismatch: expected {expected}, got {found}")]
    FrameMismatch { expected: Frame, found: Frame },

    #[error("singular point X={x}, T={t}: |body of {which}| = {body:e}")]
    Singular {
        x: f64,
        t: f64,
        which: &'static str,
        body: f64,
    },

    #[error("invalid parameters: {0}")]
    Parameter(String),

    #[error("malformed document: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;
