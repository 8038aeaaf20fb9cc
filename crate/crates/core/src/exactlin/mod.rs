//! Exact linear algebra over the rationals: scalars, dense matrices,
//! elimination, canonical subspaces, polynomials, and quadratic extensions.

pub mod elim;
pub mod matrix;
pub mod poly;
pub mod quadext;
pub mod rational;
pub mod subspace;

pub use elim::{
    determinant, invert, is_positive_definite, rank, rref, solve, ExactlinError, Rref, SpanSolver,
};
pub use matrix::RationalMatrix;
pub use poly::{minimal_polynomial, Poly, Poly2};
pub use quadext::{FieldScalar, QuadExt};
pub use rational::Rational;
pub use subspace::Subspace;
