//! Exact symbolic machinery for the quantum matrix algebras, their
//! coquasitriangular pairing, the dual Borel functional algebras, the
//! generalized quantum double with its projection, and the induced braided
//! structures — together with the verification suites that exercise every
//! identity over exact rational-function scalars.
//!
//! Scalars live in the field of rational functions of one indeterminate `t`,
//! with the deformation parameters realized as integer powers of `t` so that
//! the determinant normalization constraint holds identically. Everything is
//! exact; there is no floating point anywhere.

pub mod error;
pub mod scalar;

mod engine;

pub mod braided;
pub mod double;
pub mod functionals;
pub mod matrix;
pub mod parse;
pub mod qmatrix;
pub mod report;
pub mod sigma;
pub mod suites;

pub use error::{Error, Result};
pub use scalar::{IntPoly, QzContext, RatFunc};

pub use double::{DoubleElement, HhDoubleElement};
pub use functionals::{DualElement, DualLetter, NamedGenerator};
pub use matrix::SparseMatrix;
pub use qmatrix::{Gen, QElement, QMonomial};
pub use report::{CheckResult, Status, SuiteReport};
pub use sigma::Sign;
pub use suites::{SuiteParams, SUITE_NAMES};
