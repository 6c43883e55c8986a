use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{GerbeError, Result};
use crate::exactalg::Rational;

/// Exponents of x, y and τ.
pub type Monomial = (u32, u32, u32);

/// Polynomial in x, y and a formal scalar τ with rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Rational) -> Self {
        Poly::monomial((0, 0, 0), c)
    }

    pub fn monomial(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn x() -> Self {
        Poly::monomial((1, 0, 0), Rational::one())
    }

    pub fn y() -> Self {
        Poly::monomial((0, 1, 0), Rational::one())
    }

    pub fn tau() -> Self {
        Poly::monomial((0, 0, 1), Rational::one())
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Poly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        let slot = self.terms.entry(m).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn has_tau(&self) -> bool {
        self.terms.keys().any(|m| m.2 > 0)
    }

    /// Total degree in x and y; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.0 + m.1).max()
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::from_terms(self.terms.iter().map(|(m, a)| (*m, a * c)))
    }

    pub fn dx(&self) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.0 > 0)
                .map(|(m, c)| ((m.0 - 1, m.1, m.2), c * Rational::from_integer(m.0.into()))),
        )
    }

    pub fn dy(&self) -> Poly {
        Poly::from_terms(
            self.terms
                .iter()
                .filter(|(m, _)| m.1 > 0)
                .map(|(m, c)| ((m.0, m.1 - 1, m.2), c * Rational::from_integer(m.1.into()))),
        )
    }

    pub fn pow(&self, n: u32) -> Poly {
        (0..n).fold(Poly::constant(Rational::one()), |acc, _| &acc * self)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, other: &Poly) -> Poly {
        self + &(-other)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term((m1.0 + m2.0, m1.1 + m2.1, m1.2 + m2.2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, other: Poly) -> Poly {
                (&self).$f(&other)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Poly {
    /// Terms by descending degree; `0` for the zero polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut order: Vec<(&Monomial, &Rational)> = self.terms.iter().collect();
        order.sort_by(|(a, _), (b, _)| (b.0 + b.1 + b.2, b).cmp(&(a.0 + a.1 + a.2, a)));
        for (i, (m, c)) in order.into_iter().enumerate() {
            let negative = *c < Rational::zero();
            let abs = if negative { -c.clone() } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            for (name, e) in [("x", m.0), ("y", m.1), ("tau", m.2)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() || !abs.is_one() {
                factors.insert(0, abs.to_string());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl FromStr for Poly {
    type Err = GerbeError;

    fn from_str(s: &str) -> Result<Poly> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(out)
    }
}

/// Parses the observable syntax: integers, `p/q`, `+ - * ^`, parentheses,
/// variables `x`, `y` and `tau`.
pub fn parse_poly(s: &str) -> Result<Poly> {
    s.parse()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> GerbeError {
        GerbeError::MalformedObservable(format!("{what} at offset {}", self.pos))
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

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = &acc + &self.term()?;
            } else if self.eat(b'-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            acc = &acc * &self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Poly> {
        if self.eat(b'-') {
            return Ok(-&self.unary()?);
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.natural()?;
            let e: u32 = e
                .try_into()
                .ok()
                .filter(|&e: &u32| e <= 64)
                .ok_or_else(|| self.error("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn natural(&mut self) -> Result<num_bigint::BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<Poly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(Poly::x())
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(Poly::y())
            }
            Some(b't') if self.src[self.pos..].starts_with(b"tau") => {
                self.pos += 3;
                Ok(Poly::tau())
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.natural()?;
                let save = self.pos;
                // a '/' directly followed by digits is part of the literal
                if self.eat(b'/') {
                    if matches!(self.peek(), Some(d) if d.is_ascii_digit()) {
                        let den = self.natural()?;
                        if num_traits::Zero::is_zero(&den) {
                            return Err(self.error("zero denominator"));
                        }
                        return Ok(Poly::constant(Rational::new(num, den)));
                    }
                    self.pos = save;
                    return Err(self.error("expected a denominator"));
                }
                Ok(Poly::constant(Rational::from_integer(num)))
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn parse_and_print() {
        let p = parse_poly("x^2 + y").unwrap();
        assert_eq!(p.to_string(), "x^2 + y");
        let q = parse_poly("3/2*x*y - (x - 1)^2").unwrap();
        assert_eq!(q, parse_poly("-x^2 + 3/2*x*y + 2*x - 1").unwrap());
        assert_eq!(parse_poly(&q.to_string()).unwrap(), q);
        assert_eq!(parse_poly("0").unwrap(), Poly::zero());
        assert_eq!(parse_poly("-1/3").unwrap(), Poly::constant(rat(-1, 3)));
    }

    #[test]
    fn bad_syntax() {
        for s in ["", "x +", "2/0", "z", "x^", "(x", "x y", "1/"] {
            assert!(matches!(parse_poly(s), Err(GerbeError::MalformedObservable(_))), "{s}");
        }
    }

    #[test]
    fn derivatives() {
        let p = parse_poly("x^3*y^2 + 5*y").unwrap();
        assert_eq!(p.dx(), parse_poly("3*x^2*y^2").unwrap());
        assert_eq!(p.dy(), parse_poly("2*x^3*y + 5").unwrap());
    }
}
