//! Generalized complex structures on ℝᵈ with polynomial coefficients.
//!
//! The frame of `T ⊕ T*` is `(∂₁..∂_d, dx₁..dx_d)` and `𝒥` acts on stacked
//! component columns. Coordinates are the first `d` ring variables.

mod bivector;
mod corpus;
mod hamiltonian;
mod integrability;

pub use bivector::{jacobiator, poisson_bracket, Bivector, JacobiatorSuite};
pub use corpus::{corpus, holomorphic_poisson, non_integrable_symplectic, polynomial_symplectic, CorpusEntry};
pub use hamiltonian::{check_flow_epsilon, check_xi_identities, hamiltonian_pair, FlowEpsilonReport, XiReport};
pub use integrability::{nijenhuis, nijenhuis_check, IntegrabilityReport, RandomSectionCheck};

use std::sync::Arc;

use crate::cartan::{KForm, Section};
use crate::error::{GcError, Result};
use crate::exact::{CMatrix, PolyMatrix, Polynomial, Rational, Variables};
use crate::linear::{ConstantGC, PairingSpace};

#[derive(Clone, Debug, PartialEq)]
pub struct FieldGC {
    d: usize,
    vars: Arc<Variables>,
    jmat: PolyMatrix,
}

fn poly_gram(vars: &Arc<Variables>, d: usize) -> PolyMatrix {
    PolyMatrix::from_constant(&PairingSpace::new(d).gram(), &Polynomial::zero(vars))
}

fn violation(identity: &'static str, residual: &PolyMatrix) -> GcError {
    let first = (0..residual.rows())
        .flat_map(|i| (0..residual.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| !residual[(i, j)].is_zero());
    let detail = match first {
        Some((i, j)) => format!("entry ({i}, {j}) of the residual is {}", residual[(i, j)]),
        None => String::new(),
    };
    GcError::Constraint { identity, detail }
}

/// `exp(B) = [[I, 0], [Bᵀ, I]]` over polynomials.
pub fn exp_b_field(b: &PolyMatrix) -> PolyMatrix {
    let z = b.zero_elem().clone();
    let n = b.rows();
    let one = Polynomial::one(z.vars());
    PolyMatrix::from_fn(2 * n, 2 * n, &z, |i, j| {
        if i == j {
            one.clone()
        } else if i >= n && j < n {
            b[(j, i - n)].clone()
        } else {
            z.clone()
        }
    })
}

impl FieldGC {
    /// Validates the algebraic constraints as polynomial identities.
    pub fn from_matrix(jmat: PolyMatrix, d: usize) -> Result<Self> {
        let vars = jmat.zero_elem().vars().clone();
        if jmat.rows() != 2 * d || jmat.cols() != 2 * d {
            return Err(GcError::Dimension { expected: 2 * d, got: jmat.rows() });
        }
        if d > vars.len() {
            return Err(GcError::Dimension { expected: d, got: vars.len() });
        }
        if !jmat.is_real() {
            let im = jmat.map(jmat.zero_elem(), Polynomial::im);
            return Err(violation("reality", &im));
        }
        let id = PolyMatrix::identity(2 * d, jmat.zero_elem());
        let sq = jmat.try_mul(&jmat)?.try_add(&id)?;
        if !sq.is_zero() {
            return Err(violation("square", &sq));
        }
        let g = poly_gram(&vars, d);
        let pres = jmat.transpose().try_mul(&g)?.try_mul(&jmat)?.try_sub(&g)?;
        if !pres.is_zero() {
            return Err(violation("pairing", &pres));
        }
        let kres = jmat.block(d, d, d, d).try_add(&jmat.block(0, 0, d, d).transpose())?;
        if !kres.is_zero() {
            return Err(violation("blocks", &kres));
        }
        let pi = jmat.block(0, d, d, d);
        let sigma = jmat.block(d, 0, d, d);
        if !pi.is_skew() {
            return Err(violation("blocks", &pi.try_add(&pi.transpose())?));
        }
        if !sigma.is_skew() {
            return Err(violation("blocks", &sigma.try_add(&sigma.transpose())?));
        }
        Ok(Self { d, vars, jmat })
    }

    /// Wraps a matrix without validating any constraint; for mutation tests.
    pub fn from_matrix_unchecked(jmat: PolyMatrix, d: usize) -> Self {
        let vars = jmat.zero_elem().vars().clone();
        Self { d, vars, jmat }
    }

    pub fn from_constant(g: &ConstantGC, vars: &Arc<Variables>) -> Self {
        let jmat = PolyMatrix::from_constant(g.jmat(), &Polynomial::zero(vars));
        Self { d: g.n(), vars: vars.clone(), jmat }
    }

    /// `𝒥 = [[0, −Ω⁻¹], [Ω, 0]]` for a skew polynomial Gram matrix `Ω` with
    /// constant nonzero determinant, so that the inverse is polynomial.
    pub fn symplectic_from_gram(omega: &PolyMatrix) -> Result<Self> {
        let d = omega.rows();
        if !omega.is_skew() || !omega.is_real() {
            return Err(GcError::NotSkew);
        }
        let det = omega.det_expansion();
        if !det.is_constant() || det.is_zero() {
            return Err(GcError::Precondition("Gram matrix needs a constant nonzero determinant".into()));
        }
        let inv_det = det.constant_term().inv().expect("nonzero");
        let inv = omega.adjugate().map(omega.zero_elem(), |p| p.scale(&inv_det));
        let z = PolyMatrix::zeros(d, d, omega.zero_elem());
        let jmat = PolyMatrix::from_blocks(&z, &inv.neg(), omega, &z)?;
        Self::from_matrix(jmat, d)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn vars(&self) -> &Arc<Variables> {
        &self.vars
    }

    pub fn jmat(&self) -> &PolyMatrix {
        &self.jmat
    }

    pub fn j_block(&self) -> PolyMatrix {
        self.jmat.block(0, 0, self.d, self.d)
    }

    pub fn pi_block(&self) -> PolyMatrix {
        self.jmat.block(0, self.d, self.d, self.d)
    }

    pub fn sigma_block(&self) -> PolyMatrix {
        self.jmat.block(self.d, 0, self.d, self.d)
    }

    pub fn k_block(&self) -> PolyMatrix {
        self.jmat.block(self.d, self.d, self.d, self.d)
    }

    pub fn poisson(&self) -> Bivector {
        Bivector::new(self.pi_block())
    }

    /// `𝒥` applied to a section.
    pub fn apply(&self, a: &Section) -> Section {
        Section::from_column(&self.vars, self.jmat.apply(&a.to_column()))
    }

    /// `exp(B)·𝒥·exp(−B)` for a real 2-form `B` (not required to be closed;
    /// integrability is preserved exactly when it is).
    pub fn b_transform(&self, b: &KForm) -> Result<Self> {
        if b.degree() != 2 || b.dim() != self.d {
            return Err(GcError::Dimension { expected: self.d, got: b.dim() });
        }
        if !b.is_real() {
            return Err(GcError::NotSkew);
        }
        let g = b.gram();
        let jmat = exp_b_field(&g).try_mul(&self.jmat)?.try_mul(&exp_b_field(&g.neg()))?;
        Self::from_matrix(jmat, self.d)
    }

    /// Moves the structure into a wider ring (extra parameter variables).
    pub fn extend_vars(&self, wider: &Arc<Variables>) -> Self {
        let z = Polynomial::zero(wider);
        Self { d: self.d, vars: wider.clone(), jmat: self.jmat.map(&z, |p| p.extend_vars(wider)) }
    }

    /// The matrix of `𝒥` at a point.
    pub fn matrix_at(&self, point: &[Rational]) -> Result<CMatrix> {
        if point.len() != self.d {
            return Err(GcError::Dimension { expected: self.d, got: point.len() });
        }
        Ok(self.jmat.eval(point))
    }

    pub fn evaluate_at(&self, point: &[Rational]) -> Result<ConstantGC> {
        ConstantGC::from_automorphism(&self.matrix_at(point)?, &PairingSpace::new(self.d))
    }

    pub fn rank_at(&self, point: &[Rational]) -> Result<usize> {
        Ok(self.matrix_at(point)?.block(0, self.d, self.d, self.d).rank())
    }
}

pub fn evaluate_at(g: &FieldGC, point: &[Rational]) -> Result<ConstantGC> {
    g.evaluate_at(point)
}

pub fn rank_at(g: &FieldGC, point: &[Rational]) -> Result<usize> {
    g.rank_at(point)
}

pub fn poisson(g: &FieldGC) -> Bivector {
    g.poisson()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn constant_structures_round_trip() {
        let vars = Variables::coordinates(4);
        let g = ConstantGC::standard_symplectic(4);
        let f = FieldGC::from_constant(&g, &vars);
        assert_eq!(FieldGC::from_matrix(f.jmat().clone(), 4).unwrap(), f);
        let origin = vec![rat(0, 1); 4];
        assert_eq!(f.evaluate_at(&origin).unwrap(), g);
        assert_eq!(f.rank_at(&origin).unwrap(), 4);
    }

    #[test]
    fn polynomial_entries_must_satisfy_square() {
        let vars = Variables::coordinates(2);
        let z = Polynomial::zero(&vars);
        let j = PolyMatrix::identity(4, &z);
        assert!(matches!(FieldGC::from_matrix(j, 2), Err(GcError::Constraint { identity: "square", .. })));
    }
}
