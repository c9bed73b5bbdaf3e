//! Exact arithmetic substrate: ℚ(i) scalars, polynomials, matrices and
//! canonical subspaces.

pub mod matrix;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod subspace;

pub use matrix::{CMatrix, Matrix, PolyMatrix, Ring};
pub use parse::{parse_polynomial, parse_scalar};
pub use poly::{monomial_in, monomials_up_to, random_polynomial, Monomial, Polynomial, Variables};
pub use scalar::{fmt_rational, parse_rational, rat, GaussianRational, Rational};
pub use subspace::{annihilator, conjugate, rref, subspace_intersect, subspace_sum, Subspace};
