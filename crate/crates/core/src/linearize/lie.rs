//! Finite-dimensional Lie algebras over ℚ(i) given by structure constants.

use crate::error::{GcError, Result};
use crate::exact::{CMatrix, GaussianRational, Subspace};

type Vector = Vec<GaussianRational>;

/// Structure constants `c[i][j][k] = c^k_{ij}`, so `[eᵢ, eⱼ] = Σₖ c^k_{ij} eₖ`.
pub type StructureConstants = Vec<Vec<Vec<GaussianRational>>>;

fn zero_vec(n: usize) -> Vector {
    vec![GaussianRational::zero(); n]
}

fn bracket_with(c: &StructureConstants, x: &[GaussianRational], y: &[GaussianRational]) -> Vector {
    let n = c.len();
    let mut out = zero_vec(n);
    for i in 0..n {
        if x[i].is_zero() {
            continue;
        }
        for j in 0..n {
            if y[j].is_zero() {
                continue;
            }
            let w = &x[i] * &y[j];
            for k in 0..n {
                if !c[i][j][k].is_zero() {
                    out[k] += &(&w * &c[i][j][k]);
                }
            }
        }
    }
    out
}

fn basis_vec(n: usize, i: usize) -> Vector {
    let mut v = zero_vec(n);
    v[i] = GaussianRational::one();
    v
}

fn add(a: &[GaussianRational], b: &[GaussianRational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn residual_is_zero(v: &[GaussianRational]) -> bool {
    v.iter().all(GaussianRational::is_zero)
}

/// `[x, y]` for structure constants `c`.
pub fn bracket(c: &StructureConstants, x: &[GaussianRational], y: &[GaussianRational]) -> Vec<GaussianRational> {
    bracket_with(c, x, y)
}

fn check_shape(c: &StructureConstants) -> Result<usize> {
    let n = c.len();
    if c.iter().any(|row| row.len() != n || row.iter().any(|v| v.len() != n)) {
        return Err(GcError::Dimension { expected: n, got: c.iter().map(Vec::len).max().unwrap_or(0) });
    }
    Ok(n)
}

/// Antisymmetry and the Jacobi identity on basis elements, reported as the
/// first failing check.
fn check_lie(c: &StructureConstants) -> Result<()> {
    let n = check_shape(c)?;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if c[i][j][k] != -c[j][i][k].clone() {
                    return Err(GcError::LieAlgebra(format!("antisymmetry fails at c^{k}_{{{i}{j}}}")));
                }
            }
        }
    }
    let e: Vec<Vector> = (0..n).map(|i| basis_vec(n, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let a = bracket_with(c, &bracket_with(c, &e[i], &e[j]), &e[k]);
                let b = bracket_with(c, &bracket_with(c, &e[j], &e[k]), &e[i]);
                let d = bracket_with(c, &bracket_with(c, &e[k], &e[i]), &e[j]);
                if !residual_is_zero(&add(&add(&a, &b), &d)) {
                    return Err(GcError::LieAlgebra(format!("Jacobi fails on (e{i}, e{j}, e{k})")));
                }
            }
        }
    }
    Ok(())
}

/// A complex Lie algebra with its real model: the real algebra `𝔤` with
/// constants `real_constants` and the automorphism `A` with `A² = −I` acting
/// as multiplication by `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexLieAlgebra {
    n_complex: usize,
    structure_constants: StructureConstants,
    real_constants: StructureConstants,
    a: CMatrix,
    /// Columns `b₁..b_m` with `(b, A b)` a real basis of `𝔤`.
    complex_basis: CMatrix,
}

/// Outcome of the four defining checks of the real model.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieChecks {
    pub antisymmetry: bool,
    pub jacobi: bool,
    pub a_squared: bool,
    pub a_bilinear: bool,
}

impl LieChecks {
    pub fn all(&self) -> bool {
        self.antisymmetry && self.jacobi && self.a_squared && self.a_bilinear
    }

    /// `(name, passed)` pairs in a fixed order.
    pub fn entries(&self) -> [(&'static str, bool); 4] {
        [
            ("antisymmetry", self.antisymmetry),
            ("jacobi", self.jacobi),
            ("a_squared", self.a_squared),
            ("a_bilinear", self.a_bilinear),
        ]
    }
}

/// Runs the four checks on a real model without constructing the algebra.
pub fn real_model_checks(real: &StructureConstants, a: &CMatrix) -> Result<LieChecks> {
    let d = check_shape(real)?;
    if a.rows() != d || a.cols() != d {
        return Err(GcError::Dimension { expected: d, got: a.rows() });
    }
    let antisymmetry = (0..d).all(|i| (0..d).all(|j| (0..d).all(|k| real[i][j][k] == -real[j][i][k].clone())));
    let jacobi = antisymmetry && check_lie(real).is_ok();
    let a_squared = a.try_mul(a)?.try_add(&CMatrix::cidentity(d))?.is_zero();
    let e: Vec<Vector> = (0..d).map(|i| basis_vec(d, i)).collect();
    let a_bilinear = (0..d).all(|i| {
        (0..d).all(|j| {
            let lhs = a.apply(&bracket_with(real, &e[i], &e[j]));
            let rhs = bracket_with(real, &e[i], &a.apply(&e[j]));
            lhs == rhs
        })
    });
    Ok(LieChecks { antisymmetry, jacobi, a_squared, a_bilinear })
}

impl ComplexLieAlgebra {
    /// Builds the algebra from a real model after verifying all four checks.
    pub fn from_real(real: StructureConstants, a: CMatrix) -> Result<Self> {
        let checks = real_model_checks(&real, &a)?;
        if let Some((name, _)) = checks.entries().iter().find(|(_, ok)| !ok) {
            return Err(GcError::LieAlgebra(format!("{name} check fails")));
        }
        let d = real.len();
        if !d.is_multiple_of(2) {
            return Err(GcError::LieAlgebra("odd real dimension".into()));
        }
        // greedily pick coordinate vectors outside span{b, Ab}
        let mut cols: Vec<Vector> = Vec::new();
        let mut span = Subspace::zero(d);
        for k in 0..d {
            let v = basis_vec(d, k);
            if span.contains(&v) {
                continue;
            }
            let av = a.apply(&v);
            span = span.sum(&Subspace::span(d, vec![v.clone(), av]))?;
            cols.push(v);
        }
        let m = cols.len();
        let frame_cols: Vec<Vector> = cols.iter().cloned().chain(cols.iter().map(|v| a.apply(v))).collect();
        let frame = CMatrix::from_cvecs(frame_cols, d).transpose();
        let inv = frame.inverse()?;
        let mut c = vec![vec![zero_vec(m); m]; m];
        for i in 0..m {
            for j in 0..m {
                let coords = inv.apply(&bracket_with(&real, &cols[i], &cols[j]));
                for k in 0..m {
                    c[i][j][k] = GaussianRational::new(coords[k].re.clone(), coords[m + k].re.clone());
                }
            }
        }
        let complex_basis = CMatrix::from_cvecs(cols, d).transpose();
        Ok(Self { n_complex: m, structure_constants: c, real_constants: real, a, complex_basis })
    }

    /// The algebra with complex constants `c`; its real model uses the basis
    /// `(e₁..e_m, ie₁..ie_m)`.
    pub fn from_complex(c: StructureConstants) -> Result<Self> {
        check_lie(&c)?;
        let m = c.len();
        let d = 2 * m;
        let mut real = vec![vec![zero_vec(d); d]; d];
        // [i^α eᵢ, i^β eⱼ] = i^{α+β} Σₖ c^k_{ij} eₖ
        for i in 0..d {
            for j in 0..d {
                let (ci, ai) = (i % m, i / m);
                let (cj, aj) = (j % m, j / m);
                for k in 0..m {
                    let mut v = c[ci][cj][k].clone();
                    for _ in 0..ai + aj {
                        v = v.mul_i();
                    }
                    real[i][j][k] = GaussianRational::from_rational(v.re.clone());
                    real[i][j][m + k] = GaussianRational::from_rational(v.im.clone());
                }
            }
        }
        let a = CMatrix::from_fn(d, d, &GaussianRational::zero(), |r, col| {
            if r == col + m {
                GaussianRational::one()
            } else if col == r + m {
                -GaussianRational::one()
            } else {
                GaussianRational::zero()
            }
        });
        Self::from_real(real, a)
    }

    pub fn n_complex(&self) -> usize {
        self.n_complex
    }

    pub fn structure_constants(&self) -> &StructureConstants {
        &self.structure_constants
    }

    pub fn real_constants(&self) -> &StructureConstants {
        &self.real_constants
    }

    pub fn a(&self) -> &CMatrix {
        &self.a
    }

    pub fn complex_basis(&self) -> &CMatrix {
        &self.complex_basis
    }

    pub fn checks(&self) -> LieChecks {
        real_model_checks(&self.real_constants, &self.a).expect("validated on construction")
    }

    pub fn bracket(&self, x: &[GaussianRational], y: &[GaussianRational]) -> Vec<GaussianRational> {
        bracket_with(&self.structure_constants, x, y)
    }

    fn basis(&self) -> Vec<Vector> {
        (0..self.n_complex).map(|i| basis_vec(self.n_complex, i)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.structure_constants.iter().flatten().flatten().all(GaussianRational::is_zero)
    }

    /// `[U, V]` for subspaces given by spanning vectors.
    fn bracket_span(&self, u: &[Vector], v: &[Vector]) -> Subspace {
        let vecs = u.iter().flat_map(|x| v.iter().map(move |y| (x, y))).map(|(x, y)| self.bracket(x, y)).collect();
        Subspace::span(self.n_complex, vecs)
    }

    pub fn derived(&self) -> Subspace {
        let e = self.basis();
        self.bracket_span(&e, &e)
    }

    pub fn center(&self) -> Subspace {
        let m = self.n_complex;
        // rows: coefficient k of [x, e_j] as a linear form in x
        let rows: Vec<Vector> = (0..m)
            .flat_map(|j| (0..m).map(move |k| (j, k)))
            .map(|(j, k)| (0..m).map(|i| self.structure_constants[i][j][k].clone()).collect())
            .collect();
        if rows.is_empty() {
            return Subspace::zero(0);
        }
        Subspace::row_space(&CMatrix::from_cvecs(rows, m).kernel())
    }

    pub fn invariants(&self) -> LieInvariants {
        let e = self.basis();
        let derived = self.derived();
        let d_vecs = derived.basis_vectors();
        let center = self.center();
        let second_derived = self.bracket_span(&d_vecs, &d_vecs).dim();
        let lower_central = self.bracket_span(&e, &d_vecs).dim();
        let ad_on_derived = (self.n_complex == 3 && derived.dim() == 2).then(|| self.ad_class(&derived));
        LieInvariants {
            dim: self.n_complex,
            derived_dim: derived.dim(),
            center_dim: center.dim(),
            derived_in_center: center.contains_subspace(&derived),
            second_derived_dim: second_derived,
            lower_central_dim: lower_central,
            ad_on_derived,
        }
    }

    /// Class of `ad_x` on a two-dimensional abelian derived algebra `D` for
    /// any `x ∉ D`; well defined up to scaling `x`.
    fn ad_class(&self, derived: &Subspace) -> AdClass {
        let m = self.n_complex;
        let x = derived.standard_complement().basis_vectors().remove(0);
        let d_vecs = derived.basis_vectors();
        let cols: Vec<Vector> =
            d_vecs.iter().map(|v| derived.coordinates_of(&self.bracket(&x, v)).expect("[x, D] ⊆ D")).collect();
        debug_assert_eq!(m, 3);
        let mat = CMatrix::from_cvecs(cols, 2).transpose();
        let (a, b, c, d) = (&mat[(0, 0)], &mat[(0, 1)], &mat[(1, 0)], &mat[(1, 1)]);
        if b.is_zero() && c.is_zero() && a == d {
            return AdClass::Scalar;
        }
        let trace = a + d;
        let det = &(a * d) - &(b * c);
        let ratio = (!det.is_zero()).then(|| &(&trace * &trace) / &det);
        AdClass::NonScalar { trace_squared_over_det: ratio }
    }

    /// Whether the complex-linear map with matrix `t` (columns = images of
    /// basis vectors) is a bracket-preserving bijection onto `other`.
    pub fn is_isomorphism(&self, other: &ComplexLieAlgebra, t: &CMatrix) -> bool {
        let m = self.n_complex;
        if other.n_complex != m || t.rows() != m || t.cols() != m || t.det().is_zero() {
            return false;
        }
        let e = self.basis();
        e.iter().all(|x| e.iter().all(|y| t.apply(&self.bracket(x, y)) == other.bracket(&t.apply(x), &t.apply(y))))
    }

    /// Whether the real-linear map `t` between real models preserves brackets
    /// and intertwines the complex structures.
    pub fn is_real_model_isomorphism(&self, other: &ComplexLieAlgebra, t: &CMatrix) -> bool {
        let d = self.real_constants.len();
        if other.real_constants.len() != d || t.rows() != d || t.cols() != d || t.det().is_zero() {
            return false;
        }
        let intertwines = match (t.try_mul(&self.a), other.a.try_mul(t)) {
            (Ok(l), Ok(r)) => l == r,
            _ => false,
        };
        let e: Vec<Vector> = (0..d).map(|i| basis_vec(d, i)).collect();
        intertwines
            && e.iter().all(|x| {
                e.iter().all(|y| {
                    t.apply(&bracket_with(&self.real_constants, x, y))
                        == bracket_with(&other.real_constants, &t.apply(x), &t.apply(y))
                })
            })
    }

    /// A basis `(e₁, e₂)` with `[e₁, e₂] = e₁` when the algebra is the
    /// two-dimensional non-abelian one.
    pub fn non_abelian_plane_basis(&self) -> Option<(Vec<GaussianRational>, Vec<GaussianRational>)> {
        if self.n_complex != 2 || self.is_abelian() {
            return None;
        }
        let e = self.basis();
        let y = self.bracket(&e[0], &e[1]);
        // [x, y] = λ y for every x; pick x with λ ≠ 0 and rescale
        for x in &e {
            let xy = self.bracket(x, &y);
            let k = y.iter().position(|c| !c.is_zero()).expect("y ≠ 0");
            let lambda = &xy[k] / &y[k];
            if !lambda.is_zero() {
                let inv = lambda.inv().expect("nonzero");
                let e2: Vector = x.iter().map(|c| -(c * &inv)).collect();
                debug_assert_eq!(self.bracket(&y, &e2), y);
                return Some((y, e2));
            }
        }
        None
    }

    /// An explicit isomorphism onto `other` for complex dimension `≤ 2`.
    pub fn isomorphism_witness(&self, other: &ComplexLieAlgebra) -> Option<CMatrix> {
        let m = self.n_complex;
        if other.n_complex != m || m > 2 {
            return None;
        }
        let t = if self.is_abelian() && other.is_abelian() {
            CMatrix::cidentity(m)
        } else {
            let (a1, a2) = self.non_abelian_plane_basis()?;
            let (b1, b2) = other.non_abelian_plane_basis()?;
            let from = CMatrix::from_cvecs(vec![a1, a2], 2).transpose();
            let to = CMatrix::from_cvecs(vec![b1, b2], 2).transpose();
            to.try_mul(&from.inverse().ok()?).ok()?
        };
        self.is_isomorphism(other, &t).then_some(t)
    }

    /// Isomorphism over ℂ, decided by complete invariants in complex
    /// dimension `≤ 3`.
    pub fn isomorphic(&self, other: &ComplexLieAlgebra) -> Result<bool> {
        if self.n_complex != other.n_complex {
            return Ok(false);
        }
        if self.is_abelian() || other.is_abelian() {
            return Ok(self.is_abelian() == other.is_abelian());
        }
        if self.n_complex > 3 {
            return Err(GcError::Unsupported("isomorphism test needs complex dimension at most 3".into()));
        }
        Ok(self.invariants() == other.invariants())
    }
}

/// Isomorphism invariants; complete for complex dimension `≤ 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieInvariants {
    pub dim: usize,
    pub derived_dim: usize,
    pub center_dim: usize,
    pub derived_in_center: bool,
    pub second_derived_dim: usize,
    /// `dim [𝔤, [𝔤, 𝔤]]`.
    pub lower_central_dim: usize,
    pub ad_on_derived: Option<AdClass>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AdClass {
    Scalar,
    /// `tr²/det` of `ad_x|_D`, absent when `ad_x|_D` is singular.
    NonScalar {
        trace_squared_over_det: Option<GaussianRational>,
    },
}

/// `[e₁, e₂] = e₁`.
pub fn non_abelian_plane() -> ComplexLieAlgebra {
    let one = GaussianRational::one();
    let mut c = vec![vec![zero_vec(2); 2]; 2];
    c[0][1][0] = one.clone();
    c[1][0][0] = -one;
    ComplexLieAlgebra::from_complex(c).expect("Lie algebra")
}

pub fn abelian(m: usize) -> ComplexLieAlgebra {
    ComplexLieAlgebra::from_complex(vec![vec![zero_vec(m); m]; m]).expect("Lie algebra")
}
