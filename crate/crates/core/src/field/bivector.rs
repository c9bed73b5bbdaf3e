use std::sync::Arc;

use rayon::prelude::*;

use crate::cartan::{OneForm, VectorField};
use crate::exact::{monomial_in, monomials_up_to, Monomial, PolyMatrix, Polynomial, Variables};

/// Jacobiator failures over all triples of distinct nonconstant coordinate
/// monomials of degree `≤ degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiatorSuite {
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    pub triples: usize,
    /// Index triples `a < b < c` into `monomials` with nonzero Jacobiator.
    pub failures: Vec<(usize, usize, usize)>,
}

impl JacobiatorSuite {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A bivector stored as the skew matrix `P` of the map `df ↦ P·df`; its
/// components are `{xᵢ, xⱼ} = P[j][i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bivector {
    matrix: PolyMatrix,
}

impl Bivector {
    pub fn new(matrix: PolyMatrix) -> Self {
        assert!(matrix.is_square() && matrix.is_skew(), "bivector matrix must be skew");
        Self { matrix }
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn vars(&self) -> &Arc<Variables> {
        self.matrix.zero_elem().vars()
    }

    /// `{xᵢ, xⱼ}`.
    pub fn component(&self, i: usize, j: usize) -> Polynomial {
        self.matrix[(j, i)].clone()
    }

    /// `X_f = P·df`.
    pub fn hamiltonian(&self, f: &Polynomial) -> VectorField {
        let df = OneForm::exact(f, self.dim());
        VectorField::new(self.vars(), self.matrix.apply(df.comps()))
    }

    /// `{f, g} = ⟨P·df, dg⟩ = X_f(g)`.
    pub fn bracket(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.hamiltonian(f).apply(g)
    }

    /// `{{f,g},h} + {{g,h},f} + {{h,f},g}`.
    pub fn jacobiator(&self, f: &Polynomial, g: &Polynomial, h: &Polynomial) -> Polynomial {
        let a = self.bracket(&self.bracket(f, g), h);
        let b = self.bracket(&self.bracket(g, h), f);
        let c = self.bracket(&self.bracket(h, f), g);
        &(&a + &b) + &c
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Exhaustive Jacobiator check on monomial triples. Uses
    /// `Jac(f,g,h) = −(X_h{f,g} + X_f{g,h} − X_g{f,h})` with cached fields
    /// and pair brackets.
    pub fn jacobiator_suite(&self, degree: u32) -> JacobiatorSuite {
        let vars = self.vars().clone();
        let d = self.dim();
        let monomials = monomials_up_to(d, degree);
        let polys: Vec<Polynomial> = monomials.iter().map(|m| monomial_in(&vars, m)).collect();
        let n = polys.len();
        let fields: Vec<VectorField> = polys.par_iter().map(|p| self.hamiltonian(p)).collect();
        // brackets[a][b - a - 1] = {m_a, m_b} for a < b
        let brackets: Vec<Vec<Polynomial>> =
            (0..n).into_par_iter().map(|a| (a + 1..n).map(|b| fields[a].apply(&polys[b])).collect()).collect();
        let pair = |a: usize, b: usize| &brackets[a][b - a - 1];
        let mut failures: Vec<(usize, usize, usize)> = (0..n)
            .into_par_iter()
            .flat_map_iter(|a| {
                let (fields, pair) = (&fields, &pair);
                (a + 1..n).flat_map(move |b| {
                    (b + 1..n).filter_map(move |c| {
                        let mut sum = fields[c].apply(pair(a, b));
                        sum = &sum + &fields[a].apply(pair(b, c));
                        sum = &sum - &fields[b].apply(pair(a, c));
                        (!sum.is_zero()).then_some((a, b, c))
                    })
                })
            })
            .collect();
        failures.sort();
        let triples = n * n.saturating_sub(1) * n.saturating_sub(2) / 6;
        JacobiatorSuite { degree, monomials, triples, failures }
    }
}

pub fn poisson_bracket(pi: &Bivector, f: &Polynomial, g: &Polynomial) -> Polynomial {
    pi.bracket(f, g)
}

pub fn jacobiator(pi: &Bivector, f: &Polynomial, g: &Polynomial, h: &Polynomial) -> Polynomial {
    pi.jacobiator(f, g, h)
}
