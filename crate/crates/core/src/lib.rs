//! Exterior algebra of SU(3) structures in dimension six, the pointwise
//! parametrisation of their infinitesimal deformations, and a finite-difference
//! model of the nearly Kähler six-sphere on which the Gray system and its
//! linearisation are checked numerically.

pub mod algebra;
pub mod cli;
pub mod deformation;
pub mod error;
pub mod json;
pub mod rational;
pub mod report;
pub mod s6;
pub mod scalar;
pub mod suite;

pub use error::{Error, Result};
pub use scalar::{Mode, Rational, Scalar};
