//! Exact scalars, dense matrices and polynomials.

pub mod matrix;
pub mod poly;
pub mod scalar;

pub use matrix::{ExactMatrix, MatrixError};
pub use poly::{BivariatePolynomial, UnivariatePolynomial, Var};
pub use scalar::{format_scalar, frac, int, parse_scalar, ComplexExact, ExactScalar, ParseExactError};
