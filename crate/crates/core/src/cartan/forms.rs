use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::fields::{OneForm, VectorField};
use crate::exact::{GaussianRational, PolyMatrix, Polynomial, Variables};

/// A differential `k`-form on ℝᵈ, stored sparsely on strictly increasing
/// multi-indices. Absent indices are zero; stored coefficients are nonzero.
#[derive(Clone, PartialEq, Eq)]
pub struct KForm {
    vars: Arc<Variables>,
    dim: usize,
    degree: usize,
    comps: BTreeMap<Vec<usize>, Polynomial>,
}

/// Sign of the permutation sorting `idx`, or `None` on a repeated index.
fn sort_sign(idx: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut v = idx.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some((v, sign))
    }
}

fn signed(p: Polynomial, sign: i32) -> Polynomial {
    if sign < 0 {
        -p
    } else {
        p
    }
}

impl KForm {
    pub fn zero(vars: &Arc<Variables>, dim: usize, degree: usize) -> Self {
        assert!(dim <= vars.len(), "dimension exceeds the variable count");
        Self { vars: vars.clone(), dim, degree, comps: BTreeMap::new() }
    }

    pub fn function(f: &Polynomial, dim: usize) -> Self {
        let mut r = Self::zero(f.vars(), dim, 0);
        r.add_to(vec![], f);
        r
    }

    pub fn from_one_form(xi: &OneForm) -> Self {
        let mut r = Self::zero(xi.vars(), xi.dim(), 1);
        for (i, c) in xi.comps().iter().enumerate() {
            r.add_to(vec![i], c);
        }
        r
    }

    /// `dx_{i₁} ∧ … ∧ dx_{i_k}` scaled by `f`, indices in any order.
    pub fn elementary(f: &Polynomial, dim: usize, idx: &[usize]) -> Self {
        let mut r = Self::zero(f.vars(), dim, idx.len());
        if let Some((sorted, sign)) = sort_sign(idx) {
            r.add_to(sorted, &signed(f.clone(), sign));
        }
        r
    }

    /// The 2-form with Gram matrix `m`, i.e. `B(∂ᵢ, ∂ⱼ) = m[i][j]`; `m` must
    /// be skew.
    pub fn from_gram(m: &PolyMatrix, vars: &Arc<Variables>) -> Self {
        assert!(m.is_square() && m.is_skew(), "2-form Gram matrix must be skew");
        let mut r = Self::zero(vars, m.rows(), 2);
        for i in 0..m.rows() {
            for j in i + 1..m.rows() {
                r.add_to(vec![i, j], &m[(i, j)]);
            }
        }
        r
    }

    /// The Gram matrix `B(∂ᵢ, ∂ⱼ)` of a 2-form.
    pub fn gram(&self) -> PolyMatrix {
        assert_eq!(self.degree, 2, "gram needs a 2-form");
        let z = Polynomial::zero(&self.vars);
        PolyMatrix::from_fn(self.dim, self.dim, &z, |i, j| self.get(&[i, j]))
    }

    pub fn to_one_form(&self) -> OneForm {
        assert_eq!(self.degree, 1, "to_one_form needs a 1-form");
        OneForm::new(&self.vars, (0..self.dim).map(|i| self.get(&[i])).collect())
    }

    pub fn to_function(&self) -> Polynomial {
        assert_eq!(self.degree, 0, "to_function needs a 0-form");
        self.get(&[])
    }

    pub fn vars(&self) -> &Arc<Variables> {
        &self.vars
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Stored components on increasing multi-indices.
    pub fn components(&self) -> impl Iterator<Item = (&Vec<usize>, &Polynomial)> {
        self.comps.iter()
    }

    /// Component at an arbitrary multi-index, antisymmetrized.
    pub fn get(&self, idx: &[usize]) -> Polynomial {
        assert_eq!(idx.len(), self.degree);
        match sort_sign(idx) {
            None => Polynomial::zero(&self.vars),
            Some((sorted, sign)) => {
                signed(self.comps.get(&sorted).cloned().unwrap_or_else(|| Polynomial::zero(&self.vars)), sign)
            }
        }
    }

    fn add_to(&mut self, sorted: Vec<usize>, c: &Polynomial) {
        if c.is_zero() {
            return;
        }
        debug_assert!(sorted.iter().all(|&i| i < self.dim));
        let entry = self.comps.entry(sorted);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn is_real(&self) -> bool {
        self.comps.values().all(Polynomial::is_real)
    }

    fn same_shape(&self, o: &KForm) {
        assert!(self.dim == o.dim && self.degree == o.degree, "form shape mismatch");
    }

    pub fn map(&self, f: impl Fn(&Polynomial) -> Polynomial) -> KForm {
        let mut r = KForm::zero(&self.vars, self.dim, self.degree);
        for (k, c) in &self.comps {
            r.add_to(k.clone(), &f(c));
        }
        r
    }

    pub fn add(&self, o: &KForm) -> KForm {
        self.same_shape(o);
        let mut r = self.clone();
        for (k, c) in &o.comps {
            r.add_to(k.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &KForm) -> KForm {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> KForm {
        self.map(|c| -c)
    }

    pub fn scale(&self, c: &GaussianRational) -> KForm {
        self.map(|a| a.scale(c))
    }

    pub fn mul_fn(&self, f: &Polynomial) -> KForm {
        self.map(|a| a * f)
    }

    pub fn conj(&self) -> KForm {
        self.map(Polynomial::conj)
    }

    pub fn re(&self) -> KForm {
        self.map(Polynomial::re)
    }

    pub fn im(&self) -> KForm {
        self.map(Polynomial::im)
    }

    pub fn partial_eval(&self, point: &[Option<GaussianRational>]) -> KForm {
        self.map(|a| a.partial_eval(point))
    }

    /// Exterior derivative; only coordinate variables are differentiated.
    pub fn d(&self) -> KForm {
        let mut r = KForm::zero(&self.vars, self.dim, self.degree + 1);
        for (idx, c) in &self.comps {
            for j in 0..self.dim {
                if idx.contains(&j) {
                    continue;
                }
                let dc = c.diff(j);
                if dc.is_zero() {
                    continue;
                }
                let before = idx.iter().filter(|&&i| i < j).count();
                let mut new_idx = idx.clone();
                new_idx.insert(before, j);
                r.add_to(new_idx, &signed(dc, if before % 2 == 0 { 1 } else { -1 }));
            }
        }
        r
    }

    /// Interior product `ι_X`.
    pub fn iota(&self, x: &VectorField) -> KForm {
        assert_eq!(self.dim, x.dim(), "dimension mismatch");
        if self.degree == 0 {
            return KForm::zero(&self.vars, self.dim, 0);
        }
        let mut r = KForm::zero(&self.vars, self.dim, self.degree - 1);
        for (idx, c) in &self.comps {
            for (pos, &i) in idx.iter().enumerate() {
                let xi = x.comp(i);
                if xi.is_zero() {
                    continue;
                }
                let mut rest = idx.clone();
                rest.remove(pos);
                r.add_to(rest, &signed(xi * c, if pos % 2 == 0 { 1 } else { -1 }));
            }
        }
        r
    }

    /// `𝓛_X = d ι_X + ι_X d`.
    pub fn lie_derivative(&self, x: &VectorField) -> KForm {
        if self.degree == 0 {
            return KForm::function(&x.apply(&self.to_function()), self.dim);
        }
        self.iota(x).d().add(&self.d().iota(x))
    }

    pub fn wedge(&self, o: &KForm) -> KForm {
        assert_eq!(self.dim, o.dim, "dimension mismatch");
        let mut r = KForm::zero(&self.vars, self.dim, self.degree + o.degree);
        for (a, ca) in &self.comps {
            for (b, cb) in &o.comps {
                let mut idx = a.clone();
                idx.extend(b);
                if let Some((sorted, sign)) = sort_sign(&idx) {
                    r.add_to(sorted, &signed(ca * cb, sign));
                }
            }
        }
        r
    }

    /// Evaluation on `k` vector fields: `ω(X₁, …, X_k)`.
    pub fn eval_on(&self, xs: &[&VectorField]) -> Polynomial {
        assert_eq!(xs.len(), self.degree);
        let mut cur = self.clone();
        for x in xs {
            cur = cur.iota(x);
        }
        cur.to_function()
    }

    /// Pullback along the polynomial map whose `i`-th coordinate function is
    /// `map[i]` (a polynomial in the same ring, which may also carry
    /// parameters). Parameters are kept fixed.
    pub fn pullback(&self, map: &[Polynomial]) -> KForm {
        assert_eq!(map.len(), self.dim, "pullback needs one coordinate function per dimension");
        let nv = self.vars.len();
        let mut subst: Vec<Polynomial> = map.to_vec();
        subst.extend((self.dim..nv).map(|k| Polynomial::var(&self.vars, k)));
        let differentials: Vec<KForm> =
            map.iter().map(|f| KForm::from_one_form(&OneForm::exact(f, self.dim))).collect();
        let mut r = KForm::zero(&self.vars, self.dim, self.degree);
        for (idx, c) in &self.comps {
            let mut term = KForm::function(&c.compose(&subst).expect("same ring"), self.dim);
            for &i in idx {
                term = term.wedge(&differentials[i]);
            }
            r = r.add(&term);
        }
        r
    }
}

impl fmt::Display for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.comps.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .comps
            .iter()
            .map(|(idx, c)| {
                if idx.is_empty() {
                    format!("{c}")
                } else {
                    let basis: Vec<String> = idx.iter().map(|&i| format!("d{}", self.vars.names()[i])).collect();
                    format!("({c})*{}", basis.join("^"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for KForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_polynomial;

    fn poly(s: &str, v: &Arc<Variables>) -> Polynomial {
        parse_polynomial(s, v).unwrap()
    }

    #[test]
    fn d_of_x_dy() {
        let v = Variables::coordinates(2);
        let form = KForm::elementary(&poly("x1", &v), 2, &[1]);
        assert_eq!(form.d(), KForm::elementary(&Polynomial::one(&v), 2, &[0, 1]));
    }

    #[test]
    fn dd_vanishes_on_a_cubic() {
        let v = Variables::coordinates(3);
        let f = KForm::function(&poly("x1^3 - 2*x1*x2*x3 + x2^2*x3 + 5", &v), 3);
        assert!(f.d().d().is_zero());
    }

    #[test]
    fn lie_derivative_of_area_along_translation() {
        let v = Variables::coordinates(2);
        let area = KForm::elementary(&Polynomial::one(&v), 2, &[0, 1]);
        assert!(area.lie_derivative(&VectorField::basis(&v, 2, 1)).is_zero());
    }

    #[test]
    fn gram_round_trip_and_evaluation() {
        let v = Variables::coordinates(3);
        let b = KForm::elementary(&poly("x1", &v), 3, &[2, 0]);
        assert_eq!(KForm::from_gram(&b.gram(), &v), b);
        let e0 = VectorField::basis(&v, 3, 0);
        let e2 = VectorField::basis(&v, 3, 2);
        assert_eq!(b.eval_on(&[&e2, &e0]), poly("x1", &v));
        assert_eq!(b.eval_on(&[&e0, &e2]), poly("-x1", &v));
    }

    #[test]
    fn wedge_sign() {
        let v = Variables::coordinates(2);
        let one = Polynomial::one(&v);
        let dx = KForm::elementary(&one, 2, &[0]);
        let dy = KForm::elementary(&one, 2, &[1]);
        assert_eq!(dx.wedge(&dy), dy.wedge(&dx).neg());
        assert!(dx.wedge(&dx).is_zero());
    }
}
