//! Dense matrices over an exact ring, with echelon-form algorithms over ℚ(i).

use std::fmt;
use std::ops::{Index, IndexMut};

use super::poly::Polynomial;
use super::scalar::GaussianRational;
use crate::error::CoreError;

/// The arithmetic a matrix entry type must provide.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add_r(&self, o: &Self) -> Self;
    fn sub_r(&self, o: &Self) -> Self;
    fn mul_r(&self, o: &Self) -> Self;
    fn neg_r(&self) -> Self;
    /// `self += a·b`.
    fn add_mul_r(&mut self, a: &Self, b: &Self) {
        *self = self.add_r(&a.mul_r(b));
    }
}

impl Ring for GaussianRational {
    fn zero_like(&self) -> Self {
        GaussianRational::zero()
    }
    fn one_like(&self) -> Self {
        GaussianRational::one()
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn add_r(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_r(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_r(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_r(&self) -> Self {
        -self
    }
}

impl Ring for Polynomial {
    fn add_mul_r(&mut self, a: &Self, b: &Self) {
        self.add_mul(a, b);
    }
    fn zero_like(&self) -> Self {
        Polynomial::zero(self.vars())
    }
    fn one_like(&self) -> Self {
        Polynomial::one(self.vars())
    }
    fn is_zero(&self) -> bool {
        Polynomial::is_zero(self)
    }
    fn add_r(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_r(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_r(&self, o: &Self) -> Self {
        self * o
    }
    fn neg_r(&self) -> Self {
        -self
    }
}

/// Row-major dense matrix. `zero` is a template element so that empty and
/// zero-filled matrices over polynomial rings know their variable set.
#[derive(Clone, PartialEq)]
pub struct Matrix<T: Ring> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
    zero: T,
}

pub type CMatrix = Matrix<GaussianRational>;
pub type PolyMatrix = Matrix<Polynomial>;

impl<T: Ring> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize, zero: &T) -> Self {
        let zero = zero.zero_like();
        Self { rows, cols, data: vec![zero.clone(); rows * cols], zero }
    }

    pub fn identity(n: usize, zero: &T) -> Self {
        let mut m = Self::zeros(n, n, zero);
        for k in 0..n {
            m[(k, k)] = zero.one_like();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>, zero: &T) -> Result<Self, CoreError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(CoreError::Shape("ragged rows".into()));
        }
        Ok(Self { rows: r, cols: c, data: rows.into_iter().flatten().collect(), zero: zero.zero_like() })
    }

    pub fn from_fn(rows: usize, cols: usize, zero: &T, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data, zero: zero.zero_like() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn zero_elem(&self) -> &T {
        &self.zero
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn map<U: Ring>(&self, zero: &U, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect(), zero: zero.zero_like() }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, &self.zero, |i, j| self[(j, i)].clone())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Ring::is_zero)
    }

    pub fn is_skew(&self) -> bool {
        self.is_square() && (0..self.rows).all(|i| (0..self.cols).all(|j| self[(i, j)] == self[(j, i)].neg_r()))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, CoreError> {
        if self.cols != o.rows {
            return Err(CoreError::Shape(format!("{}x{} * {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        let mut out = Self::zeros(self.rows, o.cols, &self.zero);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let t = a.mul_r(b);
                    let cell = &mut out[(i, j)];
                    *cell = cell.add_r(&t);
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, CoreError> {
        self.same_shape(o)?;
        Ok(Self::from_fn(self.rows, self.cols, &self.zero, |i, j| self[(i, j)].add_r(&o[(i, j)])))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, CoreError> {
        self.same_shape(o)?;
        Ok(Self::from_fn(self.rows, self.cols, &self.zero, |i, j| self[(i, j)].sub_r(&o[(i, j)])))
    }

    fn same_shape(&self, o: &Self) -> Result<(), CoreError> {
        if self.rows != o.rows || self.cols != o.cols {
            return Err(CoreError::Shape(format!("{}x{} vs {}x{}", self.rows, self.cols, o.rows, o.cols)));
        }
        Ok(())
    }

    pub fn neg(&self) -> Self {
        self.map(&self.zero, Ring::neg_r)
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(&self.zero, |x| x.mul_r(c))
    }

    /// `M·v` for a column vector `v`.
    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "apply: vector length");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.zero.clone();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc.add_mul_r(a, b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, &self.zero, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    /// `[[a, b], [c, d]]`.
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self, CoreError> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(CoreError::Shape("incompatible blocks".into()));
        }
        let (r, cc) = (a.rows + c.rows, a.cols + b.cols);
        Ok(Self::from_fn(r, cc, &a.zero, |i, j| match (i < a.rows, j < a.cols) {
            (true, true) => a[(i, j)].clone(),
            (true, false) => b[(i, j - a.cols)].clone(),
            (false, true) => c[(i - a.rows, j)].clone(),
            (false, false) => d[(i - a.rows, j - a.cols)].clone(),
        }))
    }

    pub fn vstack(&self, o: &Self) -> Result<Self, CoreError> {
        if self.cols != o.cols {
            return Err(CoreError::Shape("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend(o.data.iter().cloned());
        Ok(Self { rows: self.rows + o.rows, cols: self.cols, data, zero: self.zero.clone() })
    }

    /// Determinant by cofactor expansion; valid over any commutative ring.
    pub fn det_expansion(&self) -> T {
        assert!(self.is_square());
        let idx: Vec<usize> = (0..self.rows).collect();
        self.minor_det(&idx, &idx)
    }

    fn minor_det(&self, rows: &[usize], cols: &[usize]) -> T {
        match rows.len() {
            0 => self.zero.one_like(),
            1 => self[(rows[0], cols[0])].clone(),
            2 => self[(rows[0], cols[0])]
                .mul_r(&self[(rows[1], cols[1])])
                .sub_r(&self[(rows[0], cols[1])].mul_r(&self[(rows[1], cols[0])])),
            _ => {
                let mut acc = self.zero.clone();
                let sub_rows = &rows[1..];
                for (k, &c) in cols.iter().enumerate() {
                    let a = &self[(rows[0], c)];
                    if a.is_zero() {
                        continue;
                    }
                    let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                    let t = a.mul_r(&self.minor_det(sub_rows, &sub_cols));
                    acc = if k % 2 == 0 { acc.add_r(&t) } else { acc.sub_r(&t) };
                }
                acc
            }
        }
    }

    /// Classical adjugate: `adj(M)·M = det(M)·I`.
    pub fn adjugate(&self) -> Self {
        assert!(self.is_square());
        let n = self.rows;
        Self::from_fn(n, n, &self.zero, |i, j| {
            // entry (i, j) is the (j, i) cofactor
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let m = self.minor_det(&rows, &cols);
            if (i + j) % 2 == 0 {
                m
            } else {
                m.neg_r()
            }
        })
    }
}

impl<T: Ring> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T: Ring> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Ring> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let cells: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl<T: Ring> Matrix<T> {
    /// Entries rendered with `Display`, row by row.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(ToString::to_string).collect()).collect()
    }
}

impl CMatrix {
    pub fn czeros(rows: usize, cols: usize) -> Self {
        Self::zeros(rows, cols, &GaussianRational::zero())
    }

    pub fn cidentity(n: usize) -> Self {
        Self::identity(n, &GaussianRational::zero())
    }

    pub fn from_cvecs(rows: Vec<Vec<GaussianRational>>, cols: usize) -> Self {
        if rows.is_empty() {
            return Self::czeros(0, cols);
        }
        Self::from_rows(rows, &GaussianRational::zero()).expect("rectangular rows")
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_cvecs(
            rows.iter().map(|r| r.iter().map(|&x| GaussianRational::from_int(x)).collect()).collect(),
            cols,
        )
    }

    pub fn conj(&self) -> Self {
        self.map(&GaussianRational::zero(), GaussianRational::conj)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(GaussianRational::is_real)
    }

    pub fn real_part(&self) -> Self {
        self.map(&GaussianRational::zero(), GaussianRational::real_part)
    }

    pub fn imag_part(&self) -> Self {
        self.map(&GaussianRational::zero(), GaussianRational::imag_part)
    }

    /// Reduced row-echelon form together with the pivot columns.
    pub fn rref_with_pivots(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for j in c..m.cols {
                m[(r, j)] = &m[(r, j)] * &inv;
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let f = m[(i, c)].clone();
                for j in c..m.cols {
                    if m[(r, j)].is_zero() {
                        continue;
                    }
                    let t = &f * &m[(r, j)];
                    m[(i, j)] -= &t;
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rref(&self) -> Self {
        self.rref_with_pivots().0
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    pub fn det(&self) -> GaussianRational {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = GaussianRational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return GaussianRational::zero();
            };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = -det;
            }
            det = &det * &m[(c, c)];
            let inv = m[(c, c)].inv().expect("nonzero pivot");
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] * &inv;
                for j in c..n {
                    let t = &f * &m[(c, j)];
                    m[(i, j)] -= &t;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Self, CoreError> {
        if !self.is_square() {
            return Err(CoreError::Shape("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, &GaussianRational::zero(), |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                GaussianRational::one()
            } else {
                GaussianRational::zero()
            }
        });
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.len() < n || (n > 0 && pivots[n - 1] >= n) {
            return Err(CoreError::Singular);
        }
        Ok(r.block(0, n, n, n))
    }

    /// A basis of `{x : M·x = 0}`, one vector per row of the result, in the
    /// canonical free-variable order.
    pub fn kernel(&self) -> Self {
        let (r, pivots) = self.rref_with_pivots();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let rows = free
            .iter()
            .map(|&f| {
                let mut v = vec![GaussianRational::zero(); self.cols];
                v[f] = GaussianRational::one();
                for (k, &p) in pivots.iter().enumerate() {
                    v[p] = -&r[(k, f)];
                }
                v
            })
            .collect();
        Self::from_cvecs(rows, self.cols)
    }

    /// One solution of `M·x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[GaussianRational]) -> Option<Vec<GaussianRational>> {
        assert_eq!(b.len(), self.rows);
        let aug = Self::from_fn(self.rows, self.cols + 1, &GaussianRational::zero(), |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref_with_pivots();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![GaussianRational::zero(); self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            x[p] = r[(k, self.cols)].clone();
        }
        Some(x)
    }
}

impl PolyMatrix {
    /// Entrywise evaluation at a point.
    pub fn eval(&self, point: &[crate::exact::scalar::Rational]) -> CMatrix {
        self.map(&GaussianRational::zero(), |p| p.eval(point))
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(Polynomial::is_real)
    }

    /// Lifts a constant matrix into polynomial entries.
    pub fn from_constant(m: &CMatrix, zero: &Polynomial) -> Self {
        m.map(zero, |c| Polynomial::constant(zero.vars(), c.clone()))
    }
}
