//! Exact scalars and deterministic exact linear algebra.

mod matrix;
pub mod poly;
mod scalar;

pub use matrix::{canonical_row_basis, Echelon, Matrix};
pub use scalar::{format_rational, parse_rational, rat, ratio, GaussianRational, Rational, Scalar};
