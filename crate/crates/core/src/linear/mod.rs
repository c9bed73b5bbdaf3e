//! Constant generalized complex structures on a real vector space `V`.
//!
//! Vectors of `V ⊕ V*` are columns `(X, ξ)` of length `2n`. A 2-form is given
//! by its Gram matrix `B[i][j] = B(eᵢ, eⱼ)`, and `exp(B)(X, ξ) = (X, ξ + ι_X B)`.

mod random;
mod splitting;
mod subspaces;

pub use random::{random_invertible, random_real_subspace, random_skew, random_unimodular, RandomGc, RandomStructure};
pub use splitting::{decompose, splitting_bfield, Decomposition};
pub use subspaces::{gc_subspace_criterion, induced_subspace, orth_complement, InducedSubspace};

use crate::error::{GcError, Result};
use crate::exact::{CMatrix, GaussianRational, Subspace};

pub(crate) fn dot(a: &[GaussianRational], b: &[GaussianRational]) -> GaussianRational {
    let mut acc = GaussianRational::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

pub(crate) fn lin_comb(
    coeffs: &[GaussianRational],
    rows: &[Vec<GaussianRational>],
    len: usize,
) -> Vec<GaussianRational> {
    let mut out = vec![GaussianRational::zero(); len];
    for (c, r) in coeffs.iter().zip(rows) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(r) {
            *o += &(c * x);
        }
    }
    out
}

/// `V ⊕ V*` with `⟨(X,ξ),(Y,η)⟩ = ξ(Y) + η(X)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairingSpace {
    n: usize,
}

impl PairingSpace {
    pub fn new(n: usize) -> Self {
        Self { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `[[0, I], [I, 0]]`.
    pub fn gram(&self) -> CMatrix {
        let n = self.n;
        CMatrix::from_fn(2 * n, 2 * n, &GaussianRational::zero(), |i, j| {
            if (i < n && j == i + n) || (i >= n && i == j + n) {
                GaussianRational::one()
            } else {
                GaussianRational::zero()
            }
        })
    }

    pub fn pair(&self, a: &[GaussianRational], b: &[GaussianRational]) -> GaussianRational {
        let n = self.n;
        &dot(&a[n..], &b[..n]) + &dot(&b[n..], &a[..n])
    }
}

/// `exp(B) = [[I, 0], [Bᵀ, I]]` on columns `(X, ξ)`.
pub fn exp_b(b: &CMatrix) -> CMatrix {
    let n = b.rows();
    CMatrix::from_blocks(&CMatrix::cidentity(n), &CMatrix::czeros(n, n), &b.transpose(), &CMatrix::cidentity(n))
        .expect("square blocks")
}

/// `(E, ε, S, ω)`. `eps` is the matrix of `ε` in the echelon basis of `E`,
/// `omega` the matrix of `ω = Im ε` in the (real) echelon basis of `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsilonData {
    pub e_space: Subspace,
    pub eps: CMatrix,
    pub s_space: Subspace,
    pub omega: CMatrix,
}

impl EpsilonData {
    /// `ε(u, v)` for `u, v ∈ E`.
    pub fn eps_on(&self, u: &[GaussianRational], v: &[GaussianRational]) -> Option<GaussianRational> {
        let cu = self.e_space.coordinates_of(u)?;
        let cv = self.e_space.coordinates_of(v)?;
        Some(dot(&cu, &self.eps.apply(&cv)))
    }

    /// `ω(u, v)` for `u, v ∈ S`.
    pub fn omega_on(&self, u: &[GaussianRational], v: &[GaussianRational]) -> Option<GaussianRational> {
        self.eps_on(u, v).map(|e| e.imag_part())
    }
}

/// A constant GC structure: the automorphism `𝒥` of `V ⊕ V*` together with
/// its `+i`-eigenspace `L`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstantGC {
    n: usize,
    jmat: CMatrix,
    l: Subspace,
}

fn nonzero_entries(m: &CMatrix) -> usize {
    (0..m.rows()).map(|i| (0..m.cols()).filter(|&j| !m[(i, j)].is_zero()).count()).sum()
}

fn constraint(identity: &'static str, residual: &CMatrix) -> GcError {
    GcError::Constraint { identity, detail: format!("residual has {} nonzero entries", nonzero_entries(residual)) }
}

impl ConstantGC {
    pub fn from_automorphism(jmat: &CMatrix, space: &PairingSpace) -> Result<Self> {
        let n = space.n();
        if jmat.rows() != 2 * n || jmat.cols() != 2 * n {
            return Err(GcError::Dimension { expected: 2 * n, got: jmat.rows() });
        }
        if !jmat.is_real() {
            return Err(constraint("reality", &jmat.imag_part()));
        }
        let id = CMatrix::cidentity(2 * n);
        let sq = jmat.try_mul(jmat)?.try_add(&id)?;
        if !sq.is_zero() {
            return Err(constraint("square", &sq));
        }
        let g = space.gram();
        let pres = jmat.transpose().try_mul(&g)?.try_mul(jmat)?.try_sub(&g)?;
        if !pres.is_zero() {
            return Err(constraint("pairing", &pres));
        }
        let j = jmat.block(0, 0, n, n);
        let pi = jmat.block(0, n, n, n);
        let sigma = jmat.block(n, 0, n, n);
        let k = jmat.block(n, n, n, n);
        let kres = k.try_add(&j.transpose())?;
        if !kres.is_zero() || !pi.is_skew() || !sigma.is_skew() {
            return Err(constraint("blocks", &kres));
        }
        let shifted = jmat.try_sub(&id.scale(&GaussianRational::i()))?;
        let l = Subspace::row_space(&shifted.kernel());
        Ok(Self { n, jmat: jmat.clone(), l })
    }

    pub fn from_subspace(l: &Subspace, space: &PairingSpace) -> Result<Self> {
        let n = space.n();
        if l.ambient_dim() != 2 * n {
            return Err(GcError::Dimension { expected: 2 * n, got: l.ambient_dim() });
        }
        let rows = l.basis_vectors();
        for a in &rows {
            for b in &rows {
                if !space.pair(a, b).is_zero() {
                    return Err(GcError::NotIsotropic);
                }
            }
        }
        let lbar = l.conjugate();
        if !l.intersect(&lbar)?.is_zero() {
            return Err(GcError::NotTransverse);
        }
        if l.dim() != n {
            return Err(GcError::Dimension { expected: n, got: l.dim() });
        }
        // 𝒥 = P·diag(i, −i)·P⁻¹ with the columns of P spanning L then L̄
        let mut cols = rows.clone();
        cols.extend(lbar.basis_vectors());
        let p = CMatrix::from_cvecs(cols, 2 * n).transpose();
        let d = CMatrix::from_fn(2 * n, 2 * n, &GaussianRational::zero(), |i, j| match (i == j, i < n) {
            (false, _) => GaussianRational::zero(),
            (true, true) => GaussianRational::i(),
            (true, false) => -GaussianRational::i(),
        });
        let jmat = p.try_mul(&d)?.try_mul(&p.inverse()?)?;
        Self::from_automorphism(&jmat, space)
    }

    /// The structure of a linear symplectic form with skew Gram matrix `omega`:
    /// `𝒥 = [[0, −Ω⁻¹], [Ω, 0]]`, `L = {(v, i·ι_v ω)}`.
    pub fn symplectic(omega: &CMatrix) -> Result<Self> {
        let n = omega.rows();
        if !omega.is_skew() || !omega.is_real() {
            return Err(GcError::NotSkew);
        }
        let inv = omega.inverse()?;
        let z = CMatrix::czeros(n, n);
        let jmat = CMatrix::from_blocks(&z, &inv.neg(), omega, &z)?;
        Self::from_automorphism(&jmat, &PairingSpace::new(n))
    }

    /// The structure of a linear complex structure `j`: `𝒥 = [[J, 0], [0, −Jᵀ]]`.
    pub fn complex(j: &CMatrix) -> Result<Self> {
        let n = j.rows();
        let z = CMatrix::czeros(n, n);
        let jmat = CMatrix::from_blocks(j, &z, &z, &j.transpose().neg())?;
        Self::from_automorphism(&jmat, &PairingSpace::new(n))
    }

    /// `dp₁∧dq₁ + … ` on ℝ²ᵏ with coordinates `(p₁, q₁, p₂, q₂, …)`.
    pub fn standard_symplectic(n: usize) -> Self {
        Self::symplectic(&standard_omega(n)).expect("standard symplectic form")
    }

    /// `J∂xₖ = ∂yₖ` on ℝ²ᵏ with coordinates `(x₁, y₁, x₂, y₂, …)`.
    pub fn standard_complex(n: usize) -> Self {
        Self::complex(&standard_omega(n).transpose()).expect("standard complex structure")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn space(&self) -> PairingSpace {
        PairingSpace::new(self.n)
    }

    pub fn jmat(&self) -> &CMatrix {
        &self.jmat
    }

    pub fn eigenspace(&self) -> &Subspace {
        &self.l
    }

    pub fn conj_eigenspace(&self) -> Subspace {
        self.l.conjugate()
    }

    pub fn j_block(&self) -> CMatrix {
        self.jmat.block(0, 0, self.n, self.n)
    }

    pub fn pi_block(&self) -> CMatrix {
        self.jmat.block(0, self.n, self.n, self.n)
    }

    pub fn sigma_block(&self) -> CMatrix {
        self.jmat.block(self.n, 0, self.n, self.n)
    }

    pub fn k_block(&self) -> CMatrix {
        self.jmat.block(self.n, self.n, self.n, self.n)
    }

    /// Rank of the Poisson block, i.e. `dim S`.
    pub fn rank(&self) -> usize {
        self.pi_block().rank()
    }

    /// `L ∩ V*_ℂ`.
    fn annihilator_part(&self) -> Subspace {
        let idx: Vec<usize> = (self.n..2 * self.n).collect();
        self.l.intersect(&Subspace::coordinate(2 * self.n, &idx)).expect("same ambient")
    }

    pub fn extract_es(&self) -> Result<EpsilonData> {
        let n = self.n;
        let k = self.l.dim();
        let lb = self.l.basis();
        let xs = lb.block(0, 0, k, n);
        let xis: Vec<Vec<GaussianRational>> = lb.block(0, n, k, n).row_vecs();
        let e_space = Subspace::row_space(&xs);
        let xs_t = xs.transpose();
        let ann: Vec<Vec<GaussianRational>> =
            self.annihilator_part().basis_vectors().into_iter().map(|v| v[n..].to_vec()).collect();
        let ann_sum = ann
            .iter()
            .fold(vec![GaussianRational::zero(); n], |acc, v| acc.iter().zip(v).map(|(a, b)| a + b).collect());
        let e_rows = e_space.basis_vectors();
        let m = e_rows.len();
        let mut eps = CMatrix::czeros(m, m);
        for (a, ea) in e_rows.iter().enumerate() {
            let c = xs_t.solve(ea).expect("E is the projection of L");
            let lift = lin_comb(&c, &xis, n);
            let other: Vec<GaussianRational> = lift.iter().zip(&ann_sum).map(|(x, y)| x + y).collect();
            for (b, eb) in e_rows.iter().enumerate() {
                let v = dot(&lift, eb);
                if v != dot(&other, eb) {
                    return Err(GcError::Constraint {
                        identity: "epsilon",
                        detail: "ε depends on the choice of lift".into(),
                    });
                }
                eps[(a, b)] = v;
            }
        }
        let s_space = e_space.intersect(&e_space.conjugate())?;
        debug_assert!(s_space.is_real());
        let mut data = EpsilonData { e_space, eps, s_space, omega: CMatrix::czeros(0, 0) };
        let s_rows = data.s_space.basis_vectors();
        let omega = CMatrix::from_fn(s_rows.len(), s_rows.len(), &GaussianRational::zero(), |a, b| {
            data.omega_on(&s_rows[a], &s_rows[b]).expect("S ⊆ E")
        });
        if !s_rows.is_empty() && omega.det().is_zero() {
            return Err(GcError::Constraint { identity: "omega", detail: "Im ε is degenerate on S".into() });
        }
        data.omega = omega;
        Ok(data)
    }

    fn check_two_form(&self, b: &CMatrix) -> Result<()> {
        if b.rows() != self.n || b.cols() != self.n {
            return Err(GcError::Dimension { expected: self.n, got: b.rows() });
        }
        if !b.is_real() || !b.is_skew() {
            return Err(GcError::NotSkew);
        }
        Ok(())
    }

    /// `exp(B)·𝒥·exp(−B)`, `L ↦ exp(B)·L`.
    pub fn b_transform(&self, b: &CMatrix) -> Result<Self> {
        self.check_two_form(b)?;
        let e = exp_b(b);
        let jmat = e.try_mul(&self.jmat)?.try_mul(&exp_b(&b.neg()))?;
        Ok(Self { n: self.n, jmat, l: self.l.image(&e) })
    }

    /// Pushforward along `a ∈ GL(V)`: conjugation by `diag(A, A⁻ᵀ)`.
    pub fn push_forward(&self, a: &CMatrix) -> Result<Self> {
        let n = self.n;
        let a_inv = a.inverse()?;
        let z = CMatrix::czeros(n, n);
        let phi = CMatrix::from_blocks(a, &z, &z, &a_inv.transpose())?;
        let phi_inv = CMatrix::from_blocks(&a_inv, &z, &z, &a.transpose())?;
        let jmat = phi.try_mul(&self.jmat)?.try_mul(&phi_inv)?;
        Ok(Self { n, jmat, l: self.l.image(&phi) })
    }

    /// `L_P ⊕ L_Q` on `V_P ⊕ V_Q`, coordinates `(X_P, X_Q, ξ_P, ξ_Q)`.
    pub fn direct_sum(p: &ConstantGC, q: &ConstantGC) -> ConstantGC {
        let (np, nq) = (p.n, q.n);
        let n = np + nq;
        // sum index → (factor, index in that factor)
        let locate = |i: usize| -> (bool, usize) {
            if i < np {
                (true, i)
            } else if i < n {
                (false, i - np)
            } else if i < n + np {
                (true, i - nq)
            } else {
                (false, nq + (i - n - np))
            }
        };
        let jmat = CMatrix::from_fn(2 * n, 2 * n, &GaussianRational::zero(), |i, j| {
            let (fi, li) = locate(i);
            let (fj, lj) = locate(j);
            match (fi, fj) {
                (true, true) => p.jmat[(li, lj)].clone(),
                (false, false) => q.jmat[(li, lj)].clone(),
                _ => GaussianRational::zero(),
            }
        });
        ConstantGC::from_automorphism(&jmat, &PairingSpace::new(n)).expect("direct sum of valid structures")
    }

    /// `𝒥` applied to a column `(X, ξ)`.
    pub fn apply(&self, v: &[GaussianRational]) -> Vec<GaussianRational> {
        self.jmat.apply(v)
    }
}

/// Gram matrix of `Σ dpₖ∧dqₖ` in coordinates `(p₁, q₁, p₂, q₂, …)`.
pub fn standard_omega(n: usize) -> CMatrix {
    assert!(n.is_multiple_of(2), "symplectic dimension must be even");
    CMatrix::from_fn(n, n, &GaussianRational::zero(), |i, j| {
        if i % 2 == 0 && j == i + 1 {
            GaussianRational::one()
        } else if j % 2 == 0 && i == j + 1 {
            -GaussianRational::one()
        } else {
            GaussianRational::zero()
        }
    })
}

pub fn from_automorphism(jmat: &CMatrix, space: &PairingSpace) -> Result<ConstantGC> {
    ConstantGC::from_automorphism(jmat, space)
}

pub fn from_subspace(l: &Subspace, space: &PairingSpace) -> Result<ConstantGC> {
    ConstantGC::from_subspace(l, space)
}

pub fn extract_es(g: &ConstantGC) -> Result<EpsilonData> {
    g.extract_es()
}

pub fn b_transform(g: &ConstantGC, b: &CMatrix) -> Result<ConstantGC> {
    g.b_transform(b)
}

pub fn direct_sum(p: &ConstantGC, q: &ConstantGC) -> ConstantGC {
    ConstantGC::direct_sum(p, q)
}
