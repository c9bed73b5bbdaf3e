use super::{ConstantGC, PairingSpace};
use crate::error::{GcError, Result};
use crate::exact::{CMatrix, GaussianRational, Subspace};

/// The structure a real subspace `W ⊆ V` inherits from `L`.
#[derive(Clone, Debug, PartialEq)]
pub struct InducedSubspace {
    pub w: Subspace,
    /// `L ∩ (W_ℂ ⊕ V*_ℂ)` in `V ⊕ V*` coordinates.
    pub l_tilde: Subspace,
    /// Image of `l_tilde` in `W ⊕ W*`, coordinates relative to the echelon
    /// basis of `W`.
    pub l_w: Subspace,
    /// `L_W ∩ conj(L_W) = 0`.
    pub is_gc: bool,
}

impl ConstantGC {
    fn check_real_subspace(&self, w: &Subspace) -> Result<()> {
        if w.ambient_dim() != self.n() {
            return Err(GcError::Dimension { expected: self.n(), got: w.ambient_dim() });
        }
        if !w.is_real() {
            return Err(GcError::Precondition("subspace must be real".into()));
        }
        Ok(())
    }

    /// `L ∩ (W_ℂ ⊕ V*_ℂ)`.
    pub fn l_tilde(&self, w: &Subspace) -> Result<Subspace> {
        self.check_real_subspace(w)?;
        let n = self.n();
        let cotangent: Vec<usize> = (n..2 * n).collect();
        let target = w.pad(0, n).sum(&Subspace::coordinate(2 * n, &cotangent))?;
        Ok(self.eigenspace().intersect(&target)?)
    }

    pub fn induced_subspace(&self, w: &Subspace) -> Result<InducedSubspace> {
        let l_tilde = self.l_tilde(w)?;
        let n = self.n();
        let k = w.dim();
        let pivots = w.pivots();
        let w_rows = w.basis_vectors();
        // (X, ξ) ↦ (coordinates of X in W, ξ restricted to W)
        let restrict = CMatrix::from_fn(2 * k, 2 * n, &GaussianRational::zero(), |r, c| {
            if r < k {
                if c == pivots[r] {
                    GaussianRational::one()
                } else {
                    GaussianRational::zero()
                }
            } else if c >= n {
                w_rows[r - k][c - n].clone()
            } else {
                GaussianRational::zero()
            }
        });
        let l_w = l_tilde.image(&restrict);
        let is_gc = l_w.intersect(&l_w.conjugate())?.is_zero();
        Ok(InducedSubspace { w: w.clone(), l_tilde, l_w, is_gc })
    }

    /// The induced structure on a GC subspace, in the echelon basis of `W`.
    pub fn induced_structure(&self, w: &Subspace) -> Result<ConstantGC> {
        let ind = self.induced_subspace(w)?;
        if !ind.is_gc {
            return Err(GcError::Precondition("not a generalized complex subspace".into()));
        }
        ConstantGC::from_subspace(&ind.l_w, &PairingSpace::new(w.dim()))
    }

    /// The two conditions `(ω|_{W∩S} nondegenerate, W_ℂ = (W_ℂ∩E) + (W_ℂ∩Ē))`.
    pub fn criterion_parts(&self, w: &Subspace) -> Result<(bool, bool)> {
        self.check_real_subspace(w)?;
        let es = self.extract_es()?;
        let ws = w.intersect(&es.s_space)?;
        let rows = ws.basis_vectors();
        let om = CMatrix::from_fn(rows.len(), rows.len(), &GaussianRational::zero(), |a, b| {
            es.omega_on(&rows[a], &rows[b]).expect("W∩S ⊆ S")
        });
        let symplectic = rows.is_empty() || !om.det().is_zero();
        let we = w.intersect(&es.e_space)?;
        let splits = we.sum(&we.conjugate())? == *w;
        Ok((symplectic, splits))
    }

    pub fn gc_subspace_criterion(&self, w: &Subspace) -> Result<bool> {
        let (a, b) = self.criterion_parts(w)?;
        Ok(a && b)
    }

    /// `C_W = ρ(L̄ ∩ ann(L̃_W))`.
    pub fn orth_complement(&self, w: &Subspace) -> Result<Subspace> {
        let l_tilde = self.l_tilde(w)?;
        let a_w = self.conj_eigenspace().intersect(&l_tilde.annihilator(&self.space().gram())?)?;
        Ok(a_w.project(0..self.n()))
    }

    /// The complexified ω-orthogonal complement of `W∩S` inside `S`, computed
    /// directly from `(S, ω)`.
    pub fn omega_orthogonal(&self, w: &Subspace) -> Result<Subspace> {
        self.check_real_subspace(w)?;
        let es = self.extract_es()?;
        let ws = w.intersect(&es.s_space)?;
        let s_rows = es.s_space.basis_vectors();
        // c ∈ ℂ^{dim S} with ω(Σ cₐ sₐ, u) = 0 for every u ∈ W∩S
        let conditions: Vec<Vec<GaussianRational>> = ws
            .basis_vectors()
            .iter()
            .map(|u| {
                let cu = es.s_space.coordinates_of(u).expect("W∩S ⊆ S");
                es.omega.apply(&cu)
            })
            .collect();
        let m = s_rows.len();
        let kernel = CMatrix::from_cvecs(conditions, m).kernel();
        let vectors = kernel.row_vecs().iter().map(|c| super::lin_comb(c, &s_rows, self.n())).collect();
        Ok(Subspace::span(self.n(), vectors))
    }

    /// `Σ ⟨a, b⟩` over basis pairs is zero.
    pub fn is_isotropic(space: &PairingSpace, l: &Subspace) -> bool {
        let rows = l.basis_vectors();
        rows.iter().all(|a| rows.iter().all(|b| space.pair(a, b).is_zero()))
    }
}

pub fn induced_subspace(g: &ConstantGC, w: &Subspace) -> Result<InducedSubspace> {
    g.induced_subspace(w)
}

pub fn gc_subspace_criterion(g: &ConstantGC, w: &Subspace) -> Result<bool> {
    g.gc_subspace_criterion(w)
}

pub fn orth_complement(g: &ConstantGC, w: &Subspace) -> Result<Subspace> {
    g.orth_complement(w)
}
