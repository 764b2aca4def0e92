//! Exact rational arithmetic, dense matrices and sparse polynomials.

pub mod matrix;
pub mod poly;
pub mod rational;

pub use matrix::{add_vec, dot, int_vec, is_zero_vec, scale_vec, sub_vec, EchelonBasis, QMatrix, Rref};
pub use poly::{binomial, elementary_symmetric, monomial_basis, monomial_index, Exponent, MultiPoly};
pub use rational::{primitive_integer_vector, Rational};
