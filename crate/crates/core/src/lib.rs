//! Exact computations with finite-dimensional multiplicative Hom-Lie algebras over ℚ.
//!
//! Every structure is given by structure constants and matrices over an exact field
//! (see [`Field`]); the crate-root aliases instantiate everything at arbitrary-precision
//! rationals, which is what the text format and the command-line tool use.

pub mod action;
pub mod algebra;
pub mod cohomology;
pub mod crossed;
pub mod dsl;
pub mod error;
pub mod exactla;
pub mod extension;
pub mod free;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Field;

/// Arbitrary-precision rational numbers.
pub type Rational = num_rational::BigRational;

pub type RationalMatrix = exactla::Matrix<Rational>;
pub type RationalSubspace = exactla::Subspace<Rational>;
pub type RationalHomLie = algebra::HomLie<Rational>;
