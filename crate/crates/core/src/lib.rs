//! Certified symbol-level checks for Korn-Maxwell-Sobolev type inequalities
//! `‖D^{k-1}P‖ ≲ ‖D^{k-1}𝒜[P]‖ + ‖𝔹P‖` via algebraic conditions on Fourier symbols.

pub mod checker;
pub mod dsl;
pub mod error;
pub mod linalg;
pub mod numerics;
pub mod operator;
pub(crate) mod par;
pub mod poly;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use linalg::{LinearMapQ, Matrix, Subspace};
pub use poly::Polynomial;
pub use scalar::{Gaussian, Rational};
