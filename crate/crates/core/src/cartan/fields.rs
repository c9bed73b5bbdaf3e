use std::fmt;
use std::sync::Arc;

use crate::exact::{GaussianRational, Polynomial, Variables};

/// A vector field `Σ Xⁱ ∂ᵢ` on ℝᵈ. Coordinates are the first `d` variables of
/// the ring; any further variables are parameters.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorField {
    vars: Arc<Variables>,
    comps: Vec<Polynomial>,
}

/// A one-form `Σ ξᵢ dxᵢ`.
#[derive(Clone, PartialEq, Eq)]
pub struct OneForm {
    vars: Arc<Variables>,
    comps: Vec<Polynomial>,
}

macro_rules! component_vector {
    ($ty:ident, $sym:literal) => {
        impl $ty {
            pub fn zero(vars: &Arc<Variables>, d: usize) -> Self {
                assert!(d <= vars.len(), "dimension exceeds the variable count");
                Self { vars: vars.clone(), comps: vec![Polynomial::zero(vars); d] }
            }

            pub fn new(vars: &Arc<Variables>, comps: Vec<Polynomial>) -> Self {
                assert!(comps.len() <= vars.len());
                assert!(comps.iter().all(|c| c.vars() == vars), "component ring mismatch");
                Self { vars: vars.clone(), comps }
            }

            /// The `i`-th coordinate frame element.
            pub fn basis(vars: &Arc<Variables>, d: usize, i: usize) -> Self {
                let mut v = Self::zero(vars, d);
                v.comps[i] = Polynomial::one(vars);
                v
            }

            pub fn dim(&self) -> usize {
                self.comps.len()
            }

            pub fn vars(&self) -> &Arc<Variables> {
                &self.vars
            }

            pub fn comps(&self) -> &[Polynomial] {
                &self.comps
            }

            pub fn comp(&self, i: usize) -> &Polynomial {
                &self.comps[i]
            }

            pub fn into_comps(self) -> Vec<Polynomial> {
                self.comps
            }

            pub fn is_zero(&self) -> bool {
                self.comps.iter().all(Polynomial::is_zero)
            }

            pub fn is_real(&self) -> bool {
                self.comps.iter().all(Polynomial::is_real)
            }

            pub fn conj(&self) -> Self {
                self.map(Polynomial::conj)
            }

            pub fn re(&self) -> Self {
                self.map(Polynomial::re)
            }

            pub fn im(&self) -> Self {
                self.map(Polynomial::im)
            }

            pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> Self {
                Self { vars: self.vars.clone(), comps: self.comps.iter().map(f).collect() }
            }

            fn zip(&self, o: &Self, f: impl Fn(&Polynomial, &Polynomial) -> Polynomial) -> Self {
                assert_eq!(self.dim(), o.dim(), "dimension mismatch");
                Self { vars: self.vars.clone(), comps: self.comps.iter().zip(&o.comps).map(|(a, b)| f(a, b)).collect() }
            }

            pub fn add(&self, o: &Self) -> Self {
                self.zip(o, |a, b| a + b)
            }

            pub fn sub(&self, o: &Self) -> Self {
                self.zip(o, |a, b| a - b)
            }

            pub fn neg(&self) -> Self {
                self.map(|a| -a)
            }

            pub fn scale(&self, c: &GaussianRational) -> Self {
                self.map(|a| a.scale(c))
            }

            /// Multiplication by a function.
            pub fn mul_fn(&self, f: &Polynomial) -> Self {
                self.map(|a| a * f)
            }

            /// Substitutes rational values for some variables in every component.
            pub fn partial_eval(&self, point: &[Option<GaussianRational>]) -> Self {
                self.map(|a| a.partial_eval(point))
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let parts: Vec<String> = self
                    .comps
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(i, c)| format!("({c})*{}{}", $sym, self.vars.names()[i]))
                    .collect();
                if parts.is_empty() {
                    write!(f, "0")
                } else {
                    write!(f, "{}", parts.join(" + "))
                }
            }
        }

        impl fmt::Debug for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}", self)
            }
        }
    };
}

component_vector!(VectorField, "d/d");
component_vector!(OneForm, "d");

impl VectorField {
    /// The derivation `f ↦ Σ Xⁱ ∂ᵢ f`.
    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(&self.vars);
        for (i, c) in self.comps.iter().enumerate() {
            if !c.is_zero() {
                acc.add_mul_diff(c, f, i);
            }
        }
        acc
    }

    /// `[X, Y]ʲ = X(Yʲ) − Y(Xʲ)`.
    pub fn bracket(&self, o: &VectorField) -> VectorField {
        assert_eq!(self.dim(), o.dim(), "dimension mismatch");
        VectorField {
            vars: self.vars.clone(),
            comps: (0..self.dim()).map(|j| &self.apply(&o.comps[j]) - &o.apply(&self.comps[j])).collect(),
        }
    }
}

impl OneForm {
    /// `df` for a function `f`.
    pub fn exact(f: &Polynomial, d: usize) -> OneForm {
        OneForm { vars: f.vars().clone(), comps: (0..d).map(|i| f.diff(i)).collect() }
    }

    /// `ξ(X) = Σ ξᵢ Xⁱ`.
    /// `(𝓛_X η)ⱼ = X(ηⱼ) + Σᵢ ηᵢ ∂ⱼXⁱ`.
    pub fn lie_derivative(&self, x: &VectorField) -> OneForm {
        assert_eq!(self.dim(), x.dim(), "dimension mismatch");
        let comps = (0..self.dim())
            .map(|j| {
                let mut acc = x.apply(&self.comps[j]);
                for (a, b) in self.comps.iter().zip(x.comps()) {
                    if !a.is_zero() {
                        acc.add_mul_diff(a, b, j);
                    }
                }
                acc
            })
            .collect();
        OneForm { vars: self.vars.clone(), comps }
    }

    pub fn contract(&self, x: &VectorField) -> Polynomial {
        assert_eq!(self.dim(), x.dim(), "dimension mismatch");
        let mut acc = Polynomial::zero(&self.vars);
        for (a, b) in self.comps.iter().zip(x.comps()) {
            if !a.is_zero() && !b.is_zero() {
                acc = &acc + &(a * b);
            }
        }
        acc
    }
}
