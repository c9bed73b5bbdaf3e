//! Exact computations with generalized complex structures.
//!
//! Constant structures on vector spaces, polynomial-coefficient structures on
//! ℝᵈ with their Courant integrability and canonical Poisson bivector, the
//! B-field constructions of the local normal form and the linearization at
//! points where the Poisson tensor vanishes. All arithmetic is over ℚ(i), so
//! every identity is checked as an exact zero test.

#![allow(clippy::needless_range_loop)]

pub mod cartan;
pub mod cli;
pub mod error;
pub mod exact;
pub mod field;
pub mod linear;
pub mod linearize;
pub mod normal_form;

pub use error::{CoreError, GcError, Result};
