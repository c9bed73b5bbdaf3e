use std::fmt;
use std::sync::Arc;

use super::fields::{OneForm, VectorField};
use crate::exact::{GaussianRational, Polynomial, Variables};

/// A section `(X, ξ)` of the generalized tangent bundle `T ⊕ T*`.
#[derive(Clone, PartialEq, Eq)]
pub struct Section {
    pub vec: VectorField,
    pub form: OneForm,
}

impl Section {
    pub fn new(vec: VectorField, form: OneForm) -> Self {
        assert_eq!(vec.dim(), form.dim(), "section parts must share the ambient dimension");
        Self { vec, form }
    }

    pub fn zero(vars: &Arc<Variables>, d: usize) -> Self {
        Self { vec: VectorField::zero(vars, d), form: OneForm::zero(vars, d) }
    }

    /// The section whose stacked component column is `comps` (length `2d`).
    pub fn from_column(vars: &Arc<Variables>, comps: Vec<Polynomial>) -> Self {
        assert!(comps.len().is_multiple_of(2));
        let d = comps.len() / 2;
        let mut it = comps.into_iter();
        let x: Vec<Polynomial> = it.by_ref().take(d).collect();
        let xi: Vec<Polynomial> = it.collect();
        Self::new(VectorField::new(vars, x), OneForm::new(vars, xi))
    }

    /// Stacked components `(X¹..Xᵈ, ξ₁..ξ_d)`.
    pub fn to_column(&self) -> Vec<Polynomial> {
        self.vec.comps().iter().chain(self.form.comps()).cloned().collect()
    }

    /// Frame element `k` of the stacked basis `(∂₁..∂_d, dx₁..dx_d)`.
    pub fn frame(vars: &Arc<Variables>, d: usize, k: usize) -> Self {
        if k < d {
            Self::new(VectorField::basis(vars, d, k), OneForm::zero(vars, d))
        } else {
            Self::new(VectorField::zero(vars, d), OneForm::basis(vars, d, k - d))
        }
    }

    pub fn dim(&self) -> usize {
        self.vec.dim()
    }

    pub fn vars(&self) -> &Arc<Variables> {
        self.vec.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.vec.is_zero() && self.form.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.vec.is_real() && self.form.is_real()
    }

    pub fn add(&self, o: &Section) -> Section {
        Section::new(self.vec.add(&o.vec), self.form.add(&o.form))
    }

    pub fn sub(&self, o: &Section) -> Section {
        Section::new(self.vec.sub(&o.vec), self.form.sub(&o.form))
    }

    pub fn scale(&self, c: &GaussianRational) -> Section {
        Section::new(self.vec.scale(c), self.form.scale(c))
    }

    pub fn mul_fn(&self, f: &Polynomial) -> Section {
        Section::new(self.vec.mul_fn(f), self.form.mul_fn(f))
    }

    pub fn conj(&self) -> Section {
        Section::new(self.vec.conj(), self.form.conj())
    }

    /// `⟨(X,ξ),(Y,η)⟩ = ξ(Y) + η(X)`.
    pub fn pairing(&self, o: &Section) -> Polynomial {
        &self.form.contract(&o.vec) + &o.form.contract(&self.vec)
    }

    /// `⟦(X,ξ),(Y,η)⟧ = ([X,Y], 𝓛_X η − 𝓛_Y ξ − ½ d(ι_X η − ι_Y ξ))`.
    pub fn courant(&self, o: &Section) -> Section {
        let d = self.dim();
        let lie = o.form.lie_derivative(&self.vec).sub(&self.form.lie_derivative(&o.vec));
        let contraction = &o.form.contract(&self.vec) - &self.form.contract(&o.vec);
        let half = GaussianRational::from_ratio(1, 2);
        let correction = OneForm::exact(&contraction, d).scale(&half);
        Section::new(self.vec.bracket(&o.vec), lie.sub(&correction))
    }

    /// `([X,Y], 𝓛_X η − ι_Y dξ)`, the bracket restricted to sections of a
    /// closed isotropic subbundle.
    pub fn dirac_bracket(&self, o: &Section) -> Section {
        // ι_Y dξ = 𝓛_Y ξ − d(ξ(Y))
        let iota = self.form.lie_derivative(&o.vec).sub(&OneForm::exact(&self.form.contract(&o.vec), self.dim()));
        Section::new(self.vec.bracket(&o.vec), o.form.lie_derivative(&self.vec).sub(&iota))
    }
}

impl fmt::Debug for Section {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.vec, self.form)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::KForm;

    #[test]
    fn courant_of_translation_with_x_dy() {
        let v = Variables::coordinates(2);
        let a = Section::frame(&v, 2, 0);
        let b = Section::new(
            VectorField::zero(&v, 2),
            OneForm::new(&v, vec![Polynomial::zero(&v), Polynomial::var(&v, 0)]),
        );
        // 𝓛_{∂x}(x dy) = dy and ι_{∂x}(x dy) = 0
        assert_eq!(a.courant(&b), Section::frame(&v, 2, 3));
    }

    #[test]
    fn one_form_lie_derivative_matches_cartan_formula() {
        let v = Variables::coordinates(3);
        let p = |s: &str| crate::exact::parse_polynomial(s, &v).unwrap();
        let x = VectorField::new(&v, vec![p("x2*x3"), p("x1^2 - 1"), p("3*x1*x2*x3")]);
        let eta = OneForm::new(&v, vec![p("x3^2"), p("x1*x2"), p("x2 + 2")]);
        let cartan = KForm::from_one_form(&eta).lie_derivative(&x).to_one_form();
        assert_eq!(eta.lie_derivative(&x), cartan);
    }

    #[test]
    fn pairing_examples() {
        let v = Variables::coordinates(1);
        let dx = Section::frame(&v, 1, 0);
        let f = Section::frame(&v, 1, 1);
        assert_eq!(dx.pairing(&f), Polynomial::one(&v));
        let both = dx.add(&f);
        assert_eq!(both.pairing(&both), Polynomial::from_int(&v, 2));
    }
}
