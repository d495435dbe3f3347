//! Exact field arithmetic and dense linear algebra.

mod matrix;
mod scalar;

pub use matrix::{quotient_basis, Echelon, Matrix, QuotientBasis};
pub use scalar::{Field, Scalar};
