//! Text grammar for polynomials: `3/2*x1^2*x2 - x3 + 1/4`, `(1+2*i)*x1`.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ['^' uint]
//! atom   := number | 'i' | ident | '(' expr ')'
//! ```
//! Whitespace is ignored. `i` is the imaginary unit and cannot name a
//! variable. Division is only by nonzero constants.

use std::sync::Arc;

use num_bigint::BigInt;

use super::poly::{Polynomial, Variables};
use super::scalar::{GaussianRational, Rational};
use crate::error::CoreError;

pub fn parse_polynomial(src: &str, vars: &Arc<Variables>) -> Result<Polynomial, CoreError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, vars };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(p.err("empty expression"));
    }
    let e = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

/// Parses a constant expression (no variables) as a Gaussian rational.
pub fn parse_scalar(src: &str) -> Result<GaussianRational, CoreError> {
    let vars = Variables::new(Vec::<String>::new());
    let p = parse_polynomial(src, &vars)?;
    Ok(p.constant_term())
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a Arc<Variables>,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> CoreError {
        CoreError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Polynomial, CoreError> {
        let mut acc = Polynomial::zero(self.vars);
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                negate = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => {
                    negate = false;
                    self.pos += 1;
                }
                Some(b'-') => {
                    negate = true;
                    self.pos += 1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, CoreError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let f = self.factor()?;
                    if !f.is_constant() || f.is_zero() {
                        return Err(CoreError::Parse { pos: at, msg: "division only by nonzero constants".into() });
                    }
                    let inv = f.constant_term().inv().expect("nonzero");
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, CoreError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected exponent"));
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Polynomial, CoreError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: BigInt = std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().unwrap();
                Ok(Polynomial::constant(self.vars, Rational::from_integer(n).into()))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if name == "i" {
                    return Ok(Polynomial::constant(self.vars, GaussianRational::i()));
                }
                match self.vars.index_of(name) {
                    Some(k) => Ok(Polynomial::var(self.vars, k)),
                    None => Err(CoreError::Parse { pos: start, msg: format!("unknown variable `{name}`") }),
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::scalar::rat;
    use proptest::prelude::*;

    #[test]
    fn parses_the_documented_example() {
        let v = Variables::coordinates(3);
        let p = parse_polynomial("3/2*x1^2*x2 - x3 + 1/4", &v).unwrap();
        assert_eq!(p.to_string(), "3/2*x1^2*x2 - x3 + 1/4");
        let q = parse_polynomial("  3 / 2 * x1 ^ 2 *x2-x3+1/4 ", &v).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn imaginary_unit_and_parentheses() {
        let v = Variables::coordinates(2);
        let p = parse_polynomial("(1+2*i)*x1 - i", &v).unwrap();
        assert_eq!(p.eval(&[rat(1, 1), rat(0, 1)]), GaussianRational::new(rat(1, 1), rat(1, 1)));
        assert_eq!(parse_scalar("-3/4*i").unwrap(), GaussianRational::new(rat(0, 1), rat(-3, 4)));
    }

    #[test]
    fn rejects_bad_input() {
        let v = Variables::coordinates(2);
        for bad in ["", "x3", "x1 +", "x1/x2", "1/0", "(x1", "x1^", "2 $"] {
            assert!(parse_polynomial(bad, &v).is_err(), "accepted {bad:?}");
        }
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        let v = Variables::coordinates(3);
        proptest::collection::vec(((0u32..3, 0u32..3, 0u32..3), -5i64..5, -3i64..3, 1i64..4), 0..6).prop_map(
            move |terms| {
                Polynomial::from_terms(
                    &v,
                    terms.into_iter().map(|((a, b, c), re, im, den)| {
                        (crate::exact::poly::Monomial(vec![a, b, c]), GaussianRational::new(rat(re, den), rat(im, den)))
                    }),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn display_then_parse_is_identity(p in arb_poly()) {
            let back = parse_polynomial(&p.to_string(), p.vars()).unwrap();
            prop_assert_eq!(back, p);
        }
    }
}
