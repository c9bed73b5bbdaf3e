//! Exact scalars: rationals and Gaussian rationals `a + b·i`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Builds a rational from a machine-size numerator and denominator.
///
/// Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders a rational as `n` or `n/d`.
pub fn fmt_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `n` or `n/d` (optionally signed).
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

// Integer fast paths skip the gcd reductions of general rational arithmetic.
fn r_add(a: &Rational, b: &Rational) -> Rational {
    if b.is_zero() {
        a.clone()
    } else if a.is_zero() {
        b.clone()
    } else if a.is_integer() && b.is_integer() {
        Rational::from_integer(a.numer() + b.numer())
    } else {
        a + b
    }
}

fn r_sub(a: &Rational, b: &Rational) -> Rational {
    if b.is_zero() {
        a.clone()
    } else if a.is_integer() && b.is_integer() {
        Rational::from_integer(a.numer() - b.numer())
    } else {
        a - b
    }
}

fn r_mul(a: &Rational, b: &Rational) -> Rational {
    if a.is_zero() || b.is_zero() {
        Rational::zero()
    } else if a.is_integer() && b.is_integer() {
        Rational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

/// An element of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    pub fn from_rational(re: Rational) -> Self {
        Self { re, im: Rational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(rat(num, den))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self { re: Rational::zero(), im: Rational::one() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn real_part(&self) -> Self {
        Self::from_rational(self.re.clone())
    }

    pub fn imag_part(&self) -> Self {
        Self::from_rational(self.im.clone())
    }

    /// `|z|²`, a nonnegative rational.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self { re: &self.re * r, im: &self.im * r }
    }

    /// Multiplication by `i`.
    pub fn mul_i(&self) -> Self {
        Self { re: -self.im.clone(), im: self.re.clone() }
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for GaussianRational {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return f.write_str(&fmt_rational(&self.re));
        }
        let imag = |im: &Rational| -> String {
            if im.is_one() {
                "i".to_string()
            } else if (-im.clone()).is_one() {
                "-i".to_string()
            } else {
                format!("{}*i", fmt_rational(im))
            }
        };
        if self.re.is_zero() {
            return f.write_str(&imag(&self.im));
        }
        let sign = if self.im.is_negative() { "-" } else { "+" };
        write!(f, "{}{}{}", fmt_rational(&self.re), sign, imag(&self.im.abs()))
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Add<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: r_add(&self.re, &o.re), im: r_add(&self.im, &o.im) }
    }
}

impl Sub<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational { re: r_sub(&self.re, &o.re), im: r_sub(&self.im, &o.im) }
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussianRational::from_rational(r_mul(&self.re, &o.re));
        }
        GaussianRational {
            re: r_sub(&r_mul(&self.re, &o.re), &r_mul(&self.im, &o.im)),
            im: r_add(&r_mul(&self.re, &o.im), &r_mul(&self.im, &o.re)),
        }
    }
}

impl Div<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &GaussianRational) -> GaussianRational {
        self * &o.inv().expect("division by zero in ℚ(i)")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re.clone(), im: -self.im.clone() }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational {
                (&self).$m(&o)
            }
        }
        impl $tr<&GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: &GaussianRational) -> GaussianRational {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&GaussianRational> for GaussianRational {
    fn add_assign(&mut self, o: &GaussianRational) {
        self.re = r_add(&self.re, &o.re);
        if !o.im.is_zero() {
            self.im = r_add(&self.im, &o.im);
        }
    }
}

impl SubAssign<&GaussianRational> for GaussianRational {
    fn sub_assign(&mut self, o: &GaussianRational) {
        self.re = r_sub(&self.re, &o.re);
        if !o.im.is_zero() {
            self.im = r_sub(&self.im, &o.im);
        }
    }
}

impl MulAssign<&GaussianRational> for GaussianRational {
    fn mul_assign(&mut self, o: &GaussianRational) {
        *self = &*self * o;
    }
}
