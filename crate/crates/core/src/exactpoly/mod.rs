//! Exact sparse polynomials over the integers in the alphabets `x`, `q`, `y`.
//!
//! The grading is `deg x_i = deg y_i = 1`, `deg q_i = 2`. Terms are ordered by graded degree,
//! then lexicographically on the x, q and y exponent vectors.

mod json;
mod monomial;
mod polynomial;
mod render;

pub use monomial::{Family, Monomial, Var};
pub use polynomial::{lex_cmp, Polynomial};
