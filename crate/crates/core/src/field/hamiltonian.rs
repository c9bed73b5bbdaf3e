use super::FieldGC;
use crate::cartan::{KForm, OneForm, Section, VectorField};
use crate::error::{GcError, Result};
use crate::exact::{rat, GaussianRational, PolyMatrix, Polynomial};

/// Residuals of the product rule `ξ_{fh} = f ξ_h + h ξ_f` and of the bracket
/// rule `ξ_{{f,h}} = 𝓛_{X_f} ξ_h − ι_{X_h} dξ_f`.
#[derive(Clone, Debug, PartialEq)]
pub struct XiReport {
    pub product_rule: OneForm,
    pub bracket_rule: OneForm,
}

impl XiReport {
    pub fn holds(&self) -> bool {
        self.product_rule.is_zero() && self.bracket_rule.is_zero()
    }
}

/// `ε = N/Δ` with `Δ = det π` and polynomial numerator `N`; the residual is
/// `Δ·𝓛_{X_f}N − X_f(Δ)·N − Δ²·dξ_f`, which vanishes exactly when
/// `𝓛_{X_f} ε = dξ_f`.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowEpsilonReport {
    pub determinant: Polynomial,
    pub numerator: KForm,
    pub residual: KForm,
    /// `Δ·dN − dΔ∧N`, the numerator of `dε`.
    pub closedness: KForm,
}

impl FlowEpsilonReport {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

impl FieldGC {
    /// `𝒥(0, df) = (X_f, ξ_f)`.
    pub fn hamiltonian_pair(&self, f: &Polynomial) -> (VectorField, OneForm) {
        let s = self.apply(&Section::new(VectorField::zero(&self.vars, self.d), OneForm::exact(f, self.d)));
        (s.vec, s.form)
    }

    /// The same pair from the `+i`-eigen-projection: `(0, df) = ℓ + ℓ̄` with
    /// `ℓ = (X, ξ) ∈ L`, then `X_f = 2iX` and `ξ_f = −2 Im ξ`.
    pub fn hamiltonian_pair_via_projection(&self, f: &Polynomial) -> (VectorField, OneForm) {
        let df = Section::new(VectorField::zero(&self.vars, self.d), OneForm::exact(f, self.d));
        let half = GaussianRational::from_ratio(1, 2);
        let minus_i = -GaussianRational::i();
        let ell = df.add(&self.apply(&df).scale(&minus_i)).scale(&half);
        let two_i = GaussianRational::new(rat(0, 1), rat(2, 1));
        let two = GaussianRational::from_int(-2);
        (ell.vec.scale(&two_i), ell.form.im().scale(&two))
    }

    pub fn check_xi_identities(&self, f: &Polynomial, h: &Polynomial) -> XiReport {
        let (xf, xi_f) = self.hamiltonian_pair(f);
        let (xh, xi_h) = self.hamiltonian_pair(h);
        let (_, xi_fh) = self.hamiltonian_pair(&(f * h));
        let product_rule = xi_fh.sub(&xi_h.mul_fn(f)).sub(&xi_f.mul_fn(h));
        let bracket = self.poisson().bracket(f, h);
        let (_, xi_bracket) = self.hamiltonian_pair(&bracket);
        let rhs = KForm::from_one_form(&xi_h)
            .lie_derivative(&xf)
            .sub(&KForm::from_one_form(&xi_f).d().iota(&xh))
            .to_one_form();
        XiReport { product_rule, bracket_rule: xi_bracket.sub(&rhs) }
    }

    /// `(Δ, N)` with `Δ = det π` and `ε = N/Δ`, the full 2-form with
    /// `ι_X ε = ξ` on `L`. Unsupported when `det π ≡ 0`, since then `E` is
    /// not generically full.
    pub fn epsilon_numerator(&self) -> Result<(Polynomial, KForm)> {
        let pi = self.pi_block();
        let delta = pi.det_expansion();
        if delta.is_zero() {
            return Err(GcError::Unsupported("the Poisson block is degenerate everywhere".into()));
        }
        // ε(X, ·) = ξ with ξ = π⁻¹(i − J)X, so Δ·ε has Gram matrix (adj π·(i − J))ᵀ
        let z = pi.zero_elem().clone();
        let i_minus_j = PolyMatrix::identity(self.d, &z)
            .scale(&Polynomial::constant(&self.vars, GaussianRational::i()))
            .try_sub(&self.j_block())?;
        let gram = pi.adjugate().try_mul(&i_minus_j)?.transpose();
        if !gram.is_skew() {
            return Err(GcError::Constraint { identity: "epsilon", detail: "ε is not skew".into() });
        }
        Ok((delta, KForm::from_gram(&gram, &self.vars)))
    }

    /// Checks `𝓛_{X_f} ε = dξ_f`, clearing the denominator `det π`.
    pub fn check_flow_epsilon(&self, f: &Polynomial) -> Result<FlowEpsilonReport> {
        let (delta, numerator) = self.epsilon_numerator()?;
        let (xf, xi_f) = self.hamiltonian_pair(f);
        let dxi = KForm::from_one_form(&xi_f).d();
        let residual = numerator
            .lie_derivative(&xf)
            .mul_fn(&delta)
            .sub(&numerator.mul_fn(&xf.apply(&delta)))
            .sub(&dxi.mul_fn(&(&delta * &delta)));
        let ddelta = KForm::function(&delta, self.d).d();
        let closedness = numerator.d().mul_fn(&delta).sub(&ddelta.wedge(&numerator));
        Ok(FlowEpsilonReport { determinant: delta, numerator, residual, closedness })
    }
}

pub fn hamiltonian_pair(g: &FieldGC, f: &Polynomial) -> (VectorField, OneForm) {
    g.hamiltonian_pair(f)
}

pub fn check_xi_identities(g: &FieldGC, f: &Polynomial, h: &Polynomial) -> XiReport {
    g.check_xi_identities(f, h)
}

pub fn check_flow_epsilon(g: &FieldGC, f: &Polynomial) -> Result<FlowEpsilonReport> {
    g.check_flow_epsilon(f)
}
