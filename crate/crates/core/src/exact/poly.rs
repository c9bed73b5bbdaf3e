//! Multivariate polynomials over ℚ(i) with a fixed, named variable set.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::scalar::{fmt_rational, GaussianRational, Rational};
use crate::error::CoreError;

/// An ordered list of coordinate symbols shared by a family of polynomials.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Variables {
    names: Vec<String>,
}

impl Variables {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Arc<Self> {
        Arc::new(Self { names: names.into_iter().map(Into::into).collect() })
    }

    /// `x1, …, xn`.
    pub fn coordinates(n: usize) -> Arc<Self> {
        Self::new((1..=n).map(|k| format!("x{k}")))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

fn same_vars(a: &Arc<Variables>, b: &Arc<Variables>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Exponent vector. Ordered graded-lexicographically: total degree first,
/// then lexicographic on exponents with `x1 > x2 > …`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, k: usize) -> Self {
        let mut e = vec![0; n];
        e[k] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree().cmp(&o.degree()).then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// A polynomial in the variables of `vars`. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    vars: Arc<Variables>,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Polynomial {
    pub fn zero(vars: &Arc<Variables>) -> Self {
        Self { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Arc<Variables>, c: GaussianRational) -> Self {
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &Arc<Variables>) -> Self {
        Self::constant(vars, GaussianRational::one())
    }

    pub fn from_int(vars: &Arc<Variables>, n: i64) -> Self {
        Self::constant(vars, GaussianRational::from_int(n))
    }

    /// The coordinate function of variable `k`.
    pub fn var(vars: &Arc<Variables>, k: usize) -> Self {
        assert!(k < vars.len(), "variable index {k} out of range");
        let mut p = Self::zero(vars);
        p.terms.insert(Monomial::var(vars.len(), k), GaussianRational::one());
        p
    }

    pub fn monomial(vars: &Arc<Variables>, m: Monomial, c: GaussianRational) -> Self {
        assert_eq!(m.0.len(), vars.len());
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(vars: &Arc<Variables>, terms: impl IntoIterator<Item = (Monomial, GaussianRational)>) -> Self {
        let mut p = Self::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.0.len(), vars.len());
            p.add_term(m, &c);
        }
        p
    }

    pub fn vars(&self) -> &Arc<Variables> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn is_real(&self) -> bool {
        self.terms.values().all(GaussianRational::is_real)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    pub fn coeff(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> GaussianRational {
        self.coeff(&Monomial::one(self.nvars()))
    }

    /// Whether any term involves variable `k`.
    pub fn depends_on(&self, k: usize) -> bool {
        self.terms.keys().any(|m| m.0[k] > 0)
    }

    /// `self += a·b` in place.
    pub fn add_mul(&mut self, a: &Polynomial, b: &Polynomial) {
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                self.add_term(ma.mul(mb), &(ca * cb));
            }
        }
    }

    /// `self += c · ∂ₖf` without intermediate polynomials.
    pub fn add_mul_diff(&mut self, c: &Polynomial, f: &Polynomial, k: usize) {
        for (m, a) in &f.terms {
            let e = m.0[k];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[k] -= 1;
            let da = a * &GaussianRational::from_int(e as i64);
            for (n, b) in &c.terms {
                self.add_term(dm.mul(n), &(&da * b));
            }
        }
    }

    fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, o: &Polynomial) -> Result<(), CoreError> {
        if same_vars(&self.vars, &o.vars) {
            Ok(())
        } else {
            Err(CoreError::VariableMismatch { left: self.vars.names().join(","), right: o.vars.names().join(",") })
        }
    }

    pub fn try_add(&self, o: &Polynomial) -> Result<Polynomial, CoreError> {
        self.check_vars(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), c);
        }
        Ok(r)
    }

    pub fn try_sub(&self, o: &Polynomial) -> Result<Polynomial, CoreError> {
        self.check_vars(o)?;
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), &-c);
        }
        Ok(r)
    }

    pub fn try_mul(&self, o: &Polynomial) -> Result<Polynomial, CoreError> {
        self.check_vars(o)?;
        let mut r = Polynomial::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                r.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &GaussianRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.vars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn conj(&self) -> Polynomial {
        Polynomial { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.conj())).collect() }
    }

    /// Coefficientwise real part.
    pub fn re(&self) -> Polynomial {
        Polynomial::from_terms(&self.vars, self.terms.iter().map(|(m, c)| (m.clone(), c.real_part())))
    }

    /// Coefficientwise imaginary part.
    pub fn im(&self) -> Polynomial {
        Polynomial::from_terms(&self.vars, self.terms.iter().map(|(m, c)| (m.clone(), c.imag_part())))
    }

    /// The homogeneous part of degree `deg`.
    pub fn homogeneous_part(&self, deg: u32) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() == deg).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// ∂/∂x_k.
    pub fn diff(&self, k: usize) -> Polynomial {
        let mut r = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[k];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[k] -= 1;
            r.add_term(m2, &c.scale(&Rational::from_integer(BigInt::from(e))));
        }
        r
    }

    /// The antiderivative in `x_k` with zero constant of integration.
    pub fn antiderivative(&self, k: usize) -> Polynomial {
        let mut r = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut m2 = m.clone();
            m2.0[k] += 1;
            let e = Rational::new(BigInt::from(1), BigInt::from(m2.0[k]));
            r.add_term(m2, &c.scale(&e));
        }
        r
    }

    /// Definite integral `∫_lo^hi p dx_k`. The bounds must not involve `x_k`.
    pub fn integrate(&self, k: usize, lo: &Polynomial, hi: &Polynomial) -> Result<Polynomial, CoreError> {
        self.check_vars(lo)?;
        self.check_vars(hi)?;
        if lo.depends_on(k) || hi.depends_on(k) {
            return Err(CoreError::BoundDependsOnVariable(self.vars.names()[k].clone()));
        }
        let anti = self.antiderivative(k);
        anti.substitute(k, hi)?.try_sub(&anti.substitute(k, lo)?)
    }

    /// Replaces `x_k` by `value`.
    pub fn substitute(&self, k: usize, value: &Polynomial) -> Result<Polynomial, CoreError> {
        self.check_vars(value)?;
        let mut powers: Vec<Polynomial> = vec![Polynomial::one(&self.vars)];
        let mut r = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[k] as usize;
            while powers.len() <= e {
                let next = &powers[powers.len() - 1] * value;
                powers.push(next);
            }
            let mut rest = m.clone();
            rest.0[k] = 0;
            let base = Polynomial::monomial(&self.vars, rest, c.clone());
            r = &r + &(&base * &powers[e]);
        }
        Ok(r)
    }

    /// Simultaneous substitution `x_k ↦ values[k]` for every variable;
    /// `values` may live in a different variable set.
    pub fn compose(&self, values: &[Polynomial]) -> Result<Polynomial, CoreError> {
        assert_eq!(values.len(), self.nvars(), "compose needs one value per variable");
        let target = match values.first() {
            Some(v) => v.vars.clone(),
            None => return Ok(self.clone()),
        };
        for v in values {
            if !same_vars(&v.vars, &target) {
                return Err(CoreError::VariableMismatch {
                    left: target.names().join(","),
                    right: v.vars.names().join(","),
                });
            }
        }
        let mut cache: Vec<Vec<Polynomial>> = values.iter().map(|_| vec![Polynomial::one(&target)]).collect();
        let mut r = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[k].len() <= e as usize {
                    let next = &cache[k][cache[k].len() - 1] * &values[k];
                    cache[k].push(next);
                }
                t = &t * &cache[k][e as usize];
            }
            r = &r + &t;
        }
        Ok(r)
    }

    /// Substitutes rational values for the variables `k` with `Some` entries.
    pub fn partial_eval(&self, point: &[Option<GaussianRational>]) -> Polynomial {
        assert_eq!(point.len(), self.nvars());
        let mut r = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut rest = m.clone();
            for (k, v) in point.iter().enumerate() {
                if let Some(v) = v {
                    for _ in 0..m.0[k] {
                        coeff = &coeff * v;
                    }
                    rest.0[k] = 0;
                }
            }
            r.add_term(rest, &coeff);
        }
        r
    }

    /// Evaluates at a point given for the first `point.len()` variables;
    /// any remaining variables must not occur.
    pub fn eval(&self, point: &[Rational]) -> GaussianRational {
        let mut total = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (k, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let x = point.get(k).unwrap_or_else(|| panic!("eval: no value for variable {}", self.vars.names()[k]));
                let xe = num_traits::pow::pow(x.clone(), e as usize);
                v = v.scale(&xe);
            }
            total += &v;
        }
        total
    }

    /// Moves the polynomial into a variable set that extends `self.vars()`
    /// by appending variables at the end.
    pub fn extend_vars(&self, wider: &Arc<Variables>) -> Polynomial {
        let n = self.nvars();
        assert!(wider.len() >= n && wider.names()[..n] == self.vars.names()[..]);
        Polynomial {
            vars: wider.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(wider.len(), 0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }
}

fn fmt_monomial(vars: &Variables, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (k, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(vars.names()[k].clone()),
            _ => parts.push(format!("{}^{}", vars.names()[k], e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    /// Terms in descending graded-lex order, e.g. `3/2*x1^2*x2 - x3 + 1/4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let mono = fmt_monomial(&self.vars, m);
            let (negative, body) = if c.im.is_zero() || c.re.is_zero() {
                let (part, unit) = if c.im.is_zero() { (&c.re, "") } else { (&c.im, "i") };
                let neg = part.is_negative();
                let mag = fmt_rational(&part.abs());
                let mut pieces = Vec::new();
                if mag != "1" || (unit.is_empty() && mono.is_empty()) {
                    pieces.push(mag);
                }
                if !unit.is_empty() {
                    pieces.push(unit.to_string());
                }
                if !mono.is_empty() {
                    pieces.push(mono.clone());
                }
                (neg, pieces.join("*"))
            } else {
                let coeff = format!("({c})");
                if mono.is_empty() {
                    (false, coeff)
                } else {
                    (false, format!("{coeff}*{mono}"))
                }
            };
            if idx == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        f.write_str(&out)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    /// Panics on mismatched variable sets; see [`Polynomial::try_add`].
    fn add(self, o: &Polynomial) -> Polynomial {
        self.try_add(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, o: &Polynomial) -> Polynomial {
        self.try_sub(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, o: &Polynomial) -> Polynomial {
        self.try_mul(o).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { vars: self.vars.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, o: Polynomial) -> Polynomial {
                (&self).$m(&o)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, o: &Polynomial) -> Polynomial {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// All monomials in `n` variables of total degree `1..=max_deg`, ascending.
pub fn monomials_up_to(n: usize, max_deg: u32) -> Vec<Monomial> {
    fn rec(n: usize, k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if k == n {
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[k] = e;
            rec(n, k + 1, left - e, cur, out);
        }
        cur[k] = 0;
    }
    let mut out = Vec::new();
    rec(n, 0, max_deg, &mut vec![0; n], &mut out);
    out.retain(|m| m.degree() > 0);
    out.sort();
    out
}

/// The monomial `m` (exponents over the first variables) as a polynomial in
/// `vars`, padding the remaining exponents with zero.
pub fn monomial_in(vars: &Arc<Variables>, m: &Monomial) -> Polynomial {
    let mut e = m.0.clone();
    e.resize(vars.len(), 0);
    Polynomial::monomial(vars, Monomial(e), GaussianRational::one())
}

/// A random real polynomial in the first `n` variables of `vars` with
/// degree `≤ max_deg`: each monomial (constant included) is kept with
/// probability 1/3 and gets an integer coefficient in `[-3, 3]`.
pub fn random_polynomial(rng: &mut impl rand::Rng, vars: &Arc<Variables>, n: usize, max_deg: u32) -> Polynomial {
    use rand::RngExt;
    let mut monos = monomials_up_to(n, max_deg);
    monos.insert(0, Monomial::one(n));
    let mut p = Polynomial::zero(vars);
    for m in &monos {
        if rng.random_range(0..3) != 0 {
            continue;
        }
        let c = GaussianRational::from_int(rng.random_range(-3..=3));
        p = &p + &monomial_in(vars, m).scale(&c);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::rat;

    fn vars3() -> Arc<Variables> {
        Variables::coordinates(3)
    }

    #[test]
    fn display_is_graded_lex_descending() {
        let v = vars3();
        let x1 = Polynomial::var(&v, 0);
        let x2 = Polynomial::var(&v, 1);
        let x3 = Polynomial::var(&v, 2);
        let p = (&x1 * &x1 * &x2).scale(&GaussianRational::from_ratio(3, 2)) - x3
            + Polynomial::constant(&v, GaussianRational::from_ratio(1, 4));
        assert_eq!(p.to_string(), "3/2*x1^2*x2 - x3 + 1/4");
        let q = x1.scale(&GaussianRational::new(rat(1, 1), rat(-2, 1)));
        assert_eq!(q.to_string(), "(1-2*i)*x1");
        assert_eq!(Polynomial::var(&v, 1).scale(&-GaussianRational::i()).to_string(), "-i*x2");
    }

    #[test]
    fn integrate_constant_and_linear() {
        let v = Variables::new(["a", "b", "t", "s"]);
        let a = Polynomial::var(&v, 0);
        let b = Polynomial::var(&v, 1);
        let zero = Polynomial::zero(&v);
        let one = Polynomial::one(&v);
        assert_eq!(one.integrate(2, &zero, &a).unwrap(), a);
        let s = Polynomial::var(&v, 3);
        assert_eq!(s.integrate(3, &zero, &b).unwrap(), (&b * &b).scale(&GaussianRational::from_ratio(1, 2)));
        assert!(s.integrate(3, &zero, &s).is_err());
    }

    #[test]
    fn mixing_variable_sets_is_an_error() {
        let a = Polynomial::var(&Variables::coordinates(2), 0);
        let b = Polynomial::var(&Variables::new(["y1", "y2"]), 0);
        assert!(matches!(a.try_add(&b), Err(CoreError::VariableMismatch { .. })));
    }

    #[test]
    fn substitute_and_eval() {
        let v = vars3();
        let x1 = Polynomial::var(&v, 0);
        let x2 = Polynomial::var(&v, 1);
        let p = &x1 * &x1 + &x2;
        let q = p.substitute(0, &(&x2 + &Polynomial::one(&v))).unwrap();
        assert_eq!(q.eval(&[rat(0, 1), rat(2, 1), rat(0, 1)]), GaussianRational::from_int(11));
    }

    #[test]
    fn monomial_enumeration_counts() {
        // C(n+d, d) - 1 nonconstant monomials
        assert_eq!(monomials_up_to(4, 3).len(), 34);
        assert_eq!(monomials_up_to(2, 2).len(), 5);
    }
}
