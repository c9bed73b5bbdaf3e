//! Seeded generators of valid constant structures: `exp(B)·A_*(symplectic ⊕ complex)`.
//! Frames are unimodular so that generated entries stay integral.

use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{standard_omega, ConstantGC};
use crate::exact::{rat, CMatrix, GaussianRational, Subspace};

fn small(rng: &mut impl Rng, bound: i64) -> GaussianRational {
    GaussianRational::from_rational(rat(rng.random_range(-bound..=bound), 1))
}

/// A random invertible integer matrix with entries in `[-2, 2]`.
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> CMatrix {
    loop {
        let m = CMatrix::from_fn(n, n, &GaussianRational::zero(), |_, _| small(rng, 2));
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// A random unimodular integer matrix: a product of `n` transvections
/// `I ± E_ij`, so that its inverse is integral as well.
pub fn random_unimodular(rng: &mut impl Rng, n: usize) -> CMatrix {
    let mut m = CMatrix::cidentity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..n {
        let i = rng.random_range(0..n);
        let j = (i + rng.random_range(1..n)) % n;
        let c = if rng.random_range(0..2) == 0 { GaussianRational::one() } else { -GaussianRational::one() };
        // row_i += c · row_j
        for k in 0..n {
            let v = &m[(j, k)] * &c;
            m[(i, k)] += &v;
        }
    }
    m
}

/// A random real skew matrix with entries in `[-bound, bound]`.
pub fn random_skew(rng: &mut impl Rng, n: usize, bound: i64) -> CMatrix {
    let mut m = CMatrix::czeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            let v = small(rng, bound);
            m[(j, i)] = -v.clone();
            m[(i, j)] = v;
        }
    }
    m
}

/// A random real subspace of dimension `k` in `ℚⁿ`.
pub fn random_real_subspace(rng: &mut impl Rng, n: usize, k: usize) -> Subspace {
    loop {
        let rows = (0..k).map(|_| (0..n).map(|_| small(rng, 2)).collect()).collect();
        let s = Subspace::span(n, rows);
        if s.dim() == k {
            return s;
        }
    }
}

/// A generated structure together with the data it was built from.
#[derive(Clone, Debug)]
pub struct RandomStructure {
    pub gc: ConstantGC,
    /// Product before the change of basis and the B-field.
    pub product: ConstantGC,
    /// Change of basis applied to the product.
    pub frame: CMatrix,
    /// B-field applied last.
    pub b: CMatrix,
}

/// Configuration for generated structures: a symplectic factor of dimension
/// `symplectic_dim` and a complex factor of dimension `complex_dim`.
#[derive(Clone, Copy, Debug)]
pub struct RandomGc {
    pub symplectic_dim: usize,
    pub complex_dim: usize,
    pub change_basis: bool,
    pub b_field: bool,
}

impl RandomGc {
    pub fn new(symplectic_dim: usize, complex_dim: usize) -> Self {
        Self { symplectic_dim, complex_dim, change_basis: true, b_field: true }
    }

    pub fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    pub fn generate(&self, rng: &mut impl Rng) -> RandomStructure {
        let a = self.symplectic_dim;
        let c = self.complex_dim;
        let p = random_unimodular(rng, a);
        let omega = p.transpose().try_mul(&standard_omega(a)).unwrap().try_mul(&p).unwrap();
        let q = random_unimodular(rng, c);
        let j = q.try_mul(&standard_omega(c).transpose()).unwrap().try_mul(&q.inverse().unwrap()).unwrap();
        let sym = ConstantGC::symplectic(&omega).expect("valid symplectic form");
        let cx = ConstantGC::complex(&j).expect("valid complex structure");
        let product = ConstantGC::direct_sum(&sym, &cx);
        let n = a + c;
        let frame = if self.change_basis { random_unimodular(rng, n) } else { CMatrix::cidentity(n) };
        let b = if self.b_field { random_skew(rng, n, 3) } else { CMatrix::czeros(n, n) };
        let gc = product.push_forward(&frame).unwrap().b_transform(&b).unwrap();
        RandomStructure { gc, product, frame, b }
    }
}
