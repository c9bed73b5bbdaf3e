//! Cartan calculus for polynomial tensor fields on ℝᵈ.
//!
//! Methods on the field types panic on a dimension mismatch; the free
//! functions below check first and return an error instead.

mod fields;
mod forms;
mod section;

pub use fields::{OneForm, VectorField};
pub use forms::KForm;
pub use section::Section;

use crate::error::CoreError;
use crate::exact::Polynomial;

fn same_dim(a: usize, b: usize) -> Result<(), CoreError> {
    if a == b {
        Ok(())
    } else {
        Err(CoreError::AmbientMismatch { expected: a, got: b })
    }
}

pub fn lie_bracket(x: &VectorField, y: &VectorField) -> Result<VectorField, CoreError> {
    same_dim(x.dim(), y.dim())?;
    Ok(x.bracket(y))
}

pub fn d(form: &KForm) -> KForm {
    form.d()
}

pub fn iota(x: &VectorField, form: &KForm) -> Result<KForm, CoreError> {
    same_dim(form.dim(), x.dim())?;
    Ok(form.iota(x))
}

pub fn lie_derivative(x: &VectorField, form: &KForm) -> Result<KForm, CoreError> {
    same_dim(form.dim(), x.dim())?;
    Ok(form.lie_derivative(x))
}

pub fn wedge(a: &KForm, b: &KForm) -> Result<KForm, CoreError> {
    same_dim(a.dim(), b.dim())?;
    Ok(a.wedge(b))
}

pub fn courant(a: &Section, b: &Section) -> Result<Section, CoreError> {
    same_dim(a.dim(), b.dim())?;
    Ok(a.courant(b))
}

pub fn pairing(a: &Section, b: &Section) -> Result<Polynomial, CoreError> {
    same_dim(a.dim(), b.dim())?;
    Ok(a.pairing(b))
}
