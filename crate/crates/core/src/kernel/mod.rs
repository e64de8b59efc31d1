//! Exact scalars, half-integer weights, graded spaces and exact Hermitian linear algebra.

pub mod matrix;
pub mod scalar;
pub mod serial;
pub mod space;
pub mod sparse;
pub mod weight;

pub use matrix::{
    congruence_diagonalize, psd_verdict, radical_basis, Congruence, HermitianMatrix, Matrix,
    PsdVerdict,
};
pub use scalar::{
    binomial, factorial, format_rational, parse_rational, rat, rat_int, Rational, Scalar,
};
pub use space::{GradedSpace, Piece};
pub use sparse::{SparseOperator, SparseVector};
pub use weight::Weight;
