use thiserror::Error;

use crate::scalar::Mode;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("numeric mode mismatch: {left} vs {right}")]
    ModeMismatch { left: Mode, right: Mode },

    #[error("operation requires a homogeneous form, got mixed degrees {degrees:?}")]
    MixedDegree { degrees: Vec<usize> },

    #[error("expected a form of degree {expected}, got degree {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid bidegree ({p},{q})")]
    InvalidBidegree { p: usize, q: usize },

    #[error("{what}: residual {residual:e} exceeds tolerance")]
    NotInDomain { what: &'static str, residual: f64 },

    #[error("inconsistent jet: {0}")]
    InconsistentJet(String),

    #[error("finite-difference step {0:e} is outside the admissible range (1e-7, 1e-1)")]
    StepOutOfRange(f64),

    #[error("degenerate frame at point: {0}")]
    DegenerateFrame(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
