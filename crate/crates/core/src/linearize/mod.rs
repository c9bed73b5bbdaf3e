//! First-order approximation at points where the Poisson tensor vanishes.
//!
//! The constant part at such a point is a B-field transform of a complex
//! structure; `normalize_point` removes that B-field. The covectors at the
//! point then carry the bracket `[dxᵢ, dxⱼ] = d{xᵢ, xⱼ}(m)` and the complex
//! structure `A = −Jᵀ(m)`, which together form a complex Lie algebra.

pub mod lie;

use crate::cartan::KForm;
use crate::error::{GcError, Result};
use crate::exact::{CMatrix, GaussianRational, PolyMatrix, Polynomial, Rational};
use crate::field::FieldGC;
use crate::linear::ConstantGC;

pub use lie::{
    abelian, bracket, non_abelian_plane, real_model_checks, AdClass, ComplexLieAlgebra, LieChecks, LieInvariants,
    StructureConstants,
};

/// The real B-field `B` with `exp(B)·g0` of complex type: `B = −ε` on `E×E`,
/// `−ε̄` on `Ē×Ē` and `0` on `E×Ē`.
pub fn normalize_point(g0: &ConstantGC) -> Result<CMatrix> {
    if !g0.pi_block().is_zero() {
        return Err(GcError::Precondition(
            "Poisson block is nonzero at the point; decompose the structure first".into(),
        ));
    }
    let n = g0.n();
    let es = g0.extract_es()?;
    let e = es.e_space.basis_vectors();
    let m = e.len();
    if 2 * m != n {
        return Err(GcError::Dimension { expected: n, got: 2 * m });
    }
    // columns (e_a, ē_a) form a basis of V_ℂ
    let cols: Vec<Vec<GaussianRational>> =
        e.iter().cloned().chain(e.iter().map(|v| v.iter().map(GaussianRational::conj).collect())).collect();
    let p = CMatrix::from_cvecs(cols, n).transpose();
    let pinv = p.inverse()?;
    let mut in_frame = CMatrix::czeros(n, n);
    for a in 0..m {
        for b in 0..m {
            in_frame[(a, b)] = -es.eps[(a, b)].clone();
            in_frame[(m + a, m + b)] = -es.eps[(a, b)].conj();
        }
    }
    let b = pinv.transpose().try_mul(&in_frame)?.try_mul(&pinv)?;
    if !b.is_real() || !b.is_skew() {
        return Err(GcError::Constraint { identity: "reality", detail: "normalizing B-field is not real".into() });
    }
    if !g0.b_transform(&b)?.sigma_block().is_zero() {
        return Err(GcError::Constraint {
            identity: "blocks",
            detail: "normalized structure still has a nonzero lower-left block".into(),
        });
    }
    Ok(b)
}

/// Real structure constants `c^k_{ij} = ∂ₖ{xᵢ, xⱼ}(m)` and `A = −Jᵀ(m)`;
/// needs rank zero and a vanishing lower-left block at `m`.
pub fn first_order_data(g: &FieldGC, m: &[Rational]) -> Result<(StructureConstants, CMatrix)> {
    let g0 = g.evaluate_at(m)?;
    if g0.rank() != 0 {
        return Err(GcError::Precondition(format!("Poisson tensor has rank {} at the point", g0.rank())));
    }
    if !g0.sigma_block().is_zero() {
        return Err(GcError::Precondition(
            "lower-left block is nonzero at the point; normalize with a B-field first".into(),
        ));
    }
    let d = g.dim();
    let pi = g.poisson();
    let mut real = vec![vec![vec![GaussianRational::zero(); d]; d]; d];
    for i in 0..d {
        for j in 0..d {
            let pij = pi.component(i, j);
            for k in 0..d {
                real[i][j][k] = pij.diff(k).eval(m);
            }
        }
    }
    Ok((real, g0.j_block().transpose().neg()))
}

/// The complex Lie algebra at `m`, after verifying the four checks.
pub fn linearize(g: &FieldGC, m: &[Rational]) -> Result<ComplexLieAlgebra> {
    let (real, a) = first_order_data(g, m)?;
    ComplexLieAlgebra::from_real(real, a)
}

/// `exp(B)·g` for a constant real skew matrix `b`.
pub fn constant_b_transform(g: &FieldGC, b: &CMatrix) -> Result<FieldGC> {
    let z = Polynomial::zero(g.vars());
    g.b_transform(&KForm::from_gram(&PolyMatrix::from_constant(b, &z), g.vars()))
}

/// Output of the full pipeline: the normalizing B-field and the algebra of
/// the transformed structure.
#[derive(Clone, Debug, PartialEq)]
pub struct Linearization {
    pub b: CMatrix,
    pub algebra: ComplexLieAlgebra,
}

/// `normalize_point` at `m`, the constant B-field transform, then `linearize`.
pub fn linearize_normalized(g: &FieldGC, m: &[Rational]) -> Result<Linearization> {
    let g0 = g.evaluate_at(m)?;
    let b = normalize_point(&g0)?;
    let algebra = linearize(&constant_b_transform(g, &b)?, m)?;
    Ok(Linearization { b, algebra })
}
