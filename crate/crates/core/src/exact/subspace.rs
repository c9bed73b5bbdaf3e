//! Subspaces of ℚ(i)ⁿ in canonical reduced-echelon form.

use std::fmt;

use super::matrix::CMatrix;
use super::scalar::GaussianRational;
use crate::error::CoreError;

/// A subspace stored by its reduced row-echelon basis (rows). Two subspaces
/// are equal exactly when their echelon bases coincide.
#[derive(Clone, PartialEq)]
pub struct Subspace {
    ambient: usize,
    basis: CMatrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: CMatrix::czeros(0, ambient) }
    }

    pub fn full(ambient: usize) -> Self {
        Self { ambient, basis: CMatrix::cidentity(ambient) }
    }

    /// The span of the rows of `m`.
    pub fn row_space(m: &CMatrix) -> Self {
        let (r, pivots) = m.rref_with_pivots();
        Self { ambient: m.cols(), basis: r.block(0, 0, pivots.len(), m.cols()) }
    }

    pub fn span(ambient: usize, vectors: Vec<Vec<GaussianRational>>) -> Self {
        assert!(vectors.iter().all(|v| v.len() == ambient), "span: vector length");
        Self::row_space(&CMatrix::from_cvecs(vectors, ambient))
    }

    /// Span of standard basis vectors `e_k`, `k ∈ idx`.
    pub fn coordinate(ambient: usize, idx: &[usize]) -> Self {
        Self::span(
            ambient,
            idx.iter()
                .map(|&k| {
                    let mut v = vec![GaussianRational::zero(); ambient];
                    v[k] = GaussianRational::one();
                    v
                })
                .collect(),
        )
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<GaussianRational>> {
        self.basis.row_vecs()
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|i| (0..self.ambient).find(|&j| !self.basis[(i, j)].is_zero()).expect("nonzero row"))
            .collect()
    }

    fn check_ambient(&self, o: &Subspace) -> Result<(), CoreError> {
        if self.ambient != o.ambient {
            return Err(CoreError::AmbientMismatch { expected: self.ambient, got: o.ambient });
        }
        Ok(())
    }

    /// Coefficients of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates_of(&self, v: &[GaussianRational]) -> Option<Vec<GaussianRational>> {
        assert_eq!(v.len(), self.ambient);
        // echelon basis: the coefficient of row k is v at its pivot
        let coeffs: Vec<GaussianRational> = self.pivots().iter().map(|&p| v[p].clone()).collect();
        let mut recon = vec![GaussianRational::zero(); self.ambient];
        for (k, c) in coeffs.iter().enumerate() {
            for (j, r) in recon.iter_mut().enumerate() {
                let t = c * &self.basis[(k, j)];
                *r += &t;
            }
        }
        (recon == v).then_some(coeffs)
    }

    pub fn contains(&self, v: &[GaussianRational]) -> bool {
        self.coordinates_of(v).is_some()
    }

    pub fn contains_subspace(&self, o: &Subspace) -> bool {
        self.ambient == o.ambient && o.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, o: &Subspace) -> Result<Subspace, CoreError> {
        self.check_ambient(o)?;
        Ok(Self::row_space(&self.basis.vstack(&o.basis)?))
    }

    pub fn intersect(&self, o: &Subspace) -> Result<Subspace, CoreError> {
        self.check_ambient(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Self::zero(self.ambient));
        }
        // x·A = y·B ⇔ (x, -y) in the left kernel of [A; B]
        let stacked = self.basis.vstack(&o.basis)?;
        let left_kernel = stacked.transpose().kernel();
        let k = self.dim();
        let vectors = (0..left_kernel.rows())
            .map(|r| {
                let coeffs = &left_kernel.row(r)[..k];
                (0..self.ambient)
                    .map(|j| {
                        let mut acc = GaussianRational::zero();
                        for (i, c) in coeffs.iter().enumerate() {
                            if !c.is_zero() {
                                acc += &(c * &self.basis[(i, j)]);
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
        Ok(Self::span(self.ambient, vectors))
    }

    /// `{v : g(v, a) = 0 for all a}` for a nondegenerate bilinear form with
    /// Gram matrix `g`, where `g(v, a) = vᵀ·g·a`.
    pub fn annihilator(&self, pairing: &CMatrix) -> Result<Subspace, CoreError> {
        if pairing.rows() != self.ambient || pairing.cols() != self.ambient {
            return Err(CoreError::Shape("pairing size does not match ambient dimension".into()));
        }
        if self.ambient > 0 && pairing.det().is_zero() {
            return Err(CoreError::DegeneratePairing);
        }
        // rows a_k·gᵀ; v ⟂ a_k ⇔ (a_k gᵀ)·v = 0
        let cond = self.basis.try_mul(&pairing.transpose())?;
        Ok(Self::row_space(&cond.kernel()))
    }

    pub fn conjugate(&self) -> Subspace {
        Self::row_space(&self.basis.conj())
    }

    /// Stable under conjugation, i.e. the complexification of a real subspace.
    /// Equivalent to the echelon basis being real.
    pub fn is_real(&self) -> bool {
        self.basis.is_real()
    }

    /// The image under the linear map `m` (acting on column vectors).
    pub fn image(&self, m: &CMatrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        let vectors = self.basis_vectors().iter().map(|v| m.apply(v)).collect();
        Self::span(m.rows(), vectors)
    }

    /// Projection onto the coordinates `range`.
    pub fn project(&self, range: std::ops::Range<usize>) -> Subspace {
        let vectors = self.basis_vectors().into_iter().map(|v| v[range.clone()].to_vec()).collect();
        Self::span(range.len(), vectors)
    }

    /// The span of the standard basis vectors at the non-pivot columns: the
    /// greedy completion of the echelon basis to a basis of the ambient space.
    pub fn standard_complement(&self) -> Subspace {
        let piv = self.pivots();
        let free: Vec<usize> = (0..self.ambient).filter(|c| !piv.contains(c)).collect();
        Self::coordinate(self.ambient, &free)
    }

    /// Embeds `self ⊂ F^n` into `F^(left + n + right)` by zero padding.
    pub fn pad(&self, left: usize, right: usize) -> Subspace {
        let vectors = self
            .basis_vectors()
            .into_iter()
            .map(|v| {
                let mut w = vec![GaussianRational::zero(); left];
                w.extend(v);
                w.extend(vec![GaussianRational::zero(); right]);
                w
            })
            .collect();
        Self::span(left + self.ambient + right, vectors)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}) {:?}", self.dim(), self.ambient, self.basis)
    }
}

pub fn rref(m: &CMatrix) -> CMatrix {
    m.rref()
}

pub fn subspace_sum(a: &Subspace, b: &Subspace) -> Result<Subspace, CoreError> {
    a.sum(b)
}

pub fn subspace_intersect(a: &Subspace, b: &Subspace) -> Result<Subspace, CoreError> {
    a.intersect(b)
}

pub fn annihilator(a: &Subspace, pairing: &CMatrix) -> Result<Subspace, CoreError> {
    a.annihilator(pairing)
}

pub fn conjugate(a: &Subspace) -> Subspace {
    a.conjugate()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::rat;

    fn gr(re: i64, im: i64) -> GaussianRational {
        GaussianRational::new(rat(re, 1), rat(im, 1))
    }

    #[test]
    fn annihilator_examples() {
        let a = Subspace::coordinate(2, &[0]);
        let id = CMatrix::cidentity(2);
        assert_eq!(a.annihilator(&id).unwrap(), Subspace::coordinate(2, &[1]));
        assert_eq!(Subspace::full(3).annihilator(&CMatrix::cidentity(3)).unwrap(), Subspace::zero(3));
        let degenerate = CMatrix::from_ints(&[&[1, 0], &[0, 0]]);
        assert_eq!(a.annihilator(&degenerate), Err(CoreError::DegeneratePairing));
    }

    #[test]
    fn conjugation_examples() {
        let real = Subspace::span(2, vec![vec![gr(1, 0), gr(2, 0)]]);
        assert_eq!(real.conjugate(), real);
        let s = Subspace::span(2, vec![vec![gr(1, 0), gr(0, 1)]]);
        assert_eq!(s.conjugate(), Subspace::span(2, vec![vec![gr(1, 0), gr(0, -1)]]));
        assert!(!s.is_real());
    }

    #[test]
    fn sum_and_intersection() {
        let a = Subspace::coordinate(3, &[0, 1]);
        let b = Subspace::span(3, vec![vec![gr(0, 0), gr(1, 0), gr(1, 0)], vec![gr(1, 0), gr(0, 0), gr(0, 0)]]);
        assert_eq!(a.sum(&b).unwrap(), Subspace::full(3));
        assert_eq!(a.intersect(&b).unwrap(), Subspace::coordinate(3, &[0]));
        assert!(a.sum(&Subspace::zero(2)).is_err());
    }

    #[test]
    fn dimension_zero_ambient() {
        let z = Subspace::zero(0);
        assert_eq!(z.sum(&z).unwrap(), z);
        assert_eq!(z.intersect(&Subspace::full(0)).unwrap(), z);
        assert!(Subspace::full(0).is_full());
    }
}
