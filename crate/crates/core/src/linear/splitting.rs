use super::{dot, lin_comb, ConstantGC};
use crate::error::{GcError, Result};
use crate::exact::{CMatrix, GaussianRational, Subspace};

/// `V = S0 ⊕ W` with the B-field splitting the structure accordingly.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub s0: Subspace,
    pub w: Subspace,
    pub b: CMatrix,
}

/// Columns: the echelon basis of `a` followed by that of `b`.
fn adapted_basis(a: &Subspace, b: &Subspace) -> CMatrix {
    let mut cols = a.basis_vectors();
    cols.extend(b.basis_vectors());
    CMatrix::from_cvecs(cols, a.ambient_dim()).transpose()
}

fn is_direct_sum(a: &Subspace, b: &Subspace, n: usize) -> Result<bool> {
    Ok(a.dim() + b.dim() == n && a.sum(b)?.is_full())
}

impl ConstantGC {
    /// The unique real 2-form vanishing on `S0` and on `W` whose transform of
    /// `self` is the direct sum of the induced structures on `S0` and `W`.
    pub fn splitting_bfield(&self, s0: &Subspace, w: &Subspace) -> Result<CMatrix> {
        let n = self.n();
        for sub in [s0, w] {
            if sub.ambient_dim() != n || !sub.is_real() {
                return Err(GcError::Precondition("splitting subspaces must be real subspaces of V".into()));
            }
        }
        if !is_direct_sum(s0, w, n)? {
            return Err(GcError::Splitting("V is not the direct sum of S0 and W".into()));
        }
        let es = self.extract_es()?;
        if !es.s_space.contains_subspace(s0) {
            return Err(GcError::Splitting("S0 is not contained in S".into()));
        }
        let s_rows = s0.basis_vectors();
        let sw = es.s_space.intersect(w)?;
        for s in &s_rows {
            for t in sw.basis_vectors() {
                if !es.omega_on(s, &t).expect("in S").is_zero() {
                    return Err(GcError::Splitting("S0 and S∩W are not ω-orthogonal".into()));
                }
            }
        }
        // w = e + ē with e ∈ E ∩ W_ℂ
        let ew = es.e_space.intersect(w)?;
        let u = ew.basis_vectors();
        let mut both = u.clone();
        both.extend(ew.conjugate().basis_vectors());
        let both_t = CMatrix::from_cvecs(both.clone(), n).transpose();
        let half = GaussianRational::from_ratio(1, 2);
        let w_rows = w.basis_vectors();
        let mut cross = CMatrix::czeros(s_rows.len(), w_rows.len());
        for (b, wv) in w_rows.iter().enumerate() {
            let coeffs = both_t
                .solve(wv)
                .ok_or_else(|| GcError::Splitting("W_ℂ is not spanned by W_ℂ∩E and its conjugate".into()))?;
            let e1 = lin_comb(&coeffs[..u.len()], &both[..u.len()], n);
            let e2bar = lin_comb(&coeffs[u.len()..], &both[u.len()..], n);
            let e: Vec<GaussianRational> = e1.iter().zip(&e2bar).map(|(x, y)| &(x + &y.conj()) * &half).collect();
            for (a, s) in s_rows.iter().enumerate() {
                let val = es.eps_on(s, &e).expect("s, e ∈ E");
                cross[(a, b)] = val.real_part().scale(&crate::exact::rat(-2, 1));
            }
        }
        let k0 = s_rows.len();
        let adapted = CMatrix::from_fn(n, n, &GaussianRational::zero(), |i, j| {
            if i < k0 && j >= k0 {
                cross[(i, j - k0)].clone()
            } else if i >= k0 && j < k0 {
                -cross[(j, i - k0)].clone()
            } else {
                GaussianRational::zero()
            }
        });
        let m_inv = adapted_basis(s0, w).inverse()?;
        Ok(m_inv.transpose().try_mul(&adapted)?.try_mul(&m_inv)?)
    }

    /// `S0 = S`, `W` the standard-basis completion of `S`, `B` the splitting
    /// B-field.
    pub fn decompose(&self) -> Result<Decomposition> {
        let s0 = self.extract_es()?.s_space;
        let w = s0.standard_complement();
        let b = self.splitting_bfield(&s0, &w)?;
        Ok(Decomposition { s0, w, b })
    }

    /// Whether `L` equals the direct sum of the structures it induces on the
    /// complementary real subspaces `a` and `b`.
    pub fn is_product_of(&self, a: &Subspace, b: &Subspace) -> Result<bool> {
        let n = self.n();
        if !is_direct_sum(a, b, n)? {
            return Ok(false);
        }
        let m = adapted_basis(a, b);
        let m_inv_t = m.inverse()?.transpose();
        let mut vectors = Vec::new();
        let mut offset = 0;
        for sub in [a, b] {
            let ind = self.induced_subspace(sub)?;
            if !ind.is_gc {
                return Ok(false);
            }
            let k = sub.dim();
            let rows = sub.basis_vectors();
            for v in ind.l_w.basis_vectors() {
                let x = lin_comb(&v[..k], &rows, n);
                // ξ with ξ(basis vector) = v on this factor and 0 on the other
                let mut adapted_xi = vec![GaussianRational::zero(); n];
                adapted_xi[offset..offset + k].clone_from_slice(&v[k..]);
                let mut col = x;
                col.extend(m_inv_t.apply(&adapted_xi));
                vectors.push(col);
            }
            offset += k;
        }
        Ok(Subspace::span(2 * n, vectors) == *self.eigenspace())
    }

    /// The form `B(u, v) = uᵀ·B·v` restricted to two subspaces vanishes.
    pub fn form_vanishes_on(b: &CMatrix, sub: &Subspace) -> bool {
        let rows = sub.basis_vectors();
        rows.iter().all(|u| rows.iter().all(|v| dot(u, &b.apply(v)).is_zero()))
    }
}

pub fn splitting_bfield(g: &ConstantGC, s0: &Subspace, w: &Subspace) -> Result<CMatrix> {
    g.splitting_bfield(s0, w)
}

pub fn decompose(g: &ConstantGC) -> Result<Decomposition> {
    g.decompose()
}
