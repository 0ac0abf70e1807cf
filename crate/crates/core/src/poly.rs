//! Sparse multivariate polynomials and a small expression parser.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{format_rational, parse_rational, Field, Rational};

/// Exponent vector with trailing zeros trimmed, so that the same monomial has
/// one key whatever the number of variables.
type Monomial = Vec<u32>;

fn trim(mut m: Monomial) -> Monomial {
    while m.last() == Some(&0) {
        m.pop();
    }
    m
}

/// A polynomial with coefficients in `F`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<F: Field> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Field> Poly<F> {
    pub fn constant(c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Poly { terms }
    }

    /// The variable with index `i`.
    pub fn var(i: usize) -> Self {
        let mut m = vec![0; i + 1];
        m[i] = 1;
        Poly {
            terms: [(m, F::one())].into(),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &F)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    /// One more than the largest variable index that occurs.
    pub fn var_bound(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<F> {
        match self.terms.len() {
            0 => Some(F::zero()),
            1 => self.terms.get(&Vec::new()).cloned(),
            _ => None,
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc * self.clone())
    }

    pub fn eval(&self, point: &[F]) -> Result<F> {
        if self.var_bound() > point.len() {
            return Err(Error::Shape(format!(
                "point has {} coordinates but the polynomial uses {} variables",
                point.len(),
                self.var_bound()
            )));
        }
        Ok(self.terms.iter().fold(F::zero(), |acc, (m, c)| {
            let mono = m.iter().enumerate().fold(F::one(), |p, (i, &e)| {
                (0..e).fold(p, |q, _| q * point[i].clone())
            });
            acc + c.clone() * mono
        }))
    }

    fn insert(&mut self, m: Monomial, c: F) {
        let m = trim(m);
        let entry = self.terms.entry(m.clone()).or_insert_with(F::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }
}

impl<F: Field> Zero for Poly<F> {
    fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<F: Field> One for Poly<F> {
    fn one() -> Self {
        Self::constant(F::one())
    }
}

impl<F: Field> Add for Poly<F> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.insert(m, c);
        }
        self
    }
}

impl<F: Field> Neg for Poly<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Poly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}

impl<F: Field> Sub for Poly<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Field> Mul for Poly<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let n = ma.len().max(mb.len());
                let m = (0..n)
                    .map(|i| ma.get(i).unwrap_or(&0) + mb.get(i).unwrap_or(&0))
                    .collect();
                out.insert(m, ca.clone() * cb.clone());
            }
        }
        out
    }
}

/// `ℚ[x₁, …, xₙ]` with named variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
}

impl PolyRing {
    /// Variable names must be distinct identifiers (a letter or `_`, then
    /// letters, digits or `_`).
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().trim().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            let mut chars = v.chars();
            let ok = chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
                && chars.all(|c| c.is_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::RingMismatch(format!("'{v}' is not a variable name")));
            }
            if vars[..i].contains(v) {
                return Err(Error::RingMismatch(format!("variable '{v}' repeated")));
            }
        }
        Ok(PolyRing { vars })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_count(&self) -> usize {
        self.vars.len()
    }

    pub fn var(&self, name: &str) -> Option<Poly<Rational>> {
        self.vars.iter().position(|v| v == name).map(Poly::var)
    }

    /// Parses integer or rational coefficients combined with `+ - * / ^` and
    /// parentheses. Division is only by nonzero constants and exponents are
    /// nonnegative integers. Error positions are 0-based byte offsets.
    pub fn parse(&self, src: &str) -> Result<Poly<Rational>> {
        let tokens = tokenize(src)?;
        let mut p = Parser {
            ring: self,
            tokens: &tokens,
            at: 0,
            end: src.len(),
        };
        let out = p.expr()?;
        match p.peek() {
            None => Ok(out),
            Some((pos, t)) => Err(Error::Parse {
                pos,
                msg: format!("unexpected {t} (write products with '*')"),
            }),
        }
    }

    pub fn format(&self, p: &Poly<Rational>) -> String {
        PolyDisplay {
            ring: self,
            poly: p,
        }
        .to_string()
    }
}

struct PolyDisplay<'a> {
    ring: &'a PolyRing,
    poly: &'a Poly<Rational>,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        // highest total degree first, then lexicographically
        let mut terms: Vec<(&[u32], &Rational)> = self.poly.terms().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let name = self
                        .ring
                        .vars
                        .get(i)
                        .cloned()
                        .unwrap_or_else(|| format!("x{}", i + 1));
                    if e == 1 {
                        name
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            let coeff = format_rational(&abs);
            let coeff = if coeff.contains('/') {
                format!("({coeff})")
            } else {
                coeff
            };
            if vars.is_empty() {
                write!(f, "{coeff}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{coeff}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Num(s) => write!(f, "number '{s}'"),
            Tok::Ident(s) => write!(f, "name '{s}'"),
            Tok::Op(c) => write!(f, "'{c}'"),
        }
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&(_, d)) = it.peek().filter(|(_, d)| d.is_ascii_digit()) {
                s.push(d);
                it.next();
            }
            out.push((pos, Tok::Num(s)));
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&(_, d)) = it.peek().filter(|(_, d)| d.is_alphanumeric() || *d == '_') {
                s.push(d);
                it.next();
            }
            out.push((pos, Tok::Ident(s)));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Op(c)));
            it.next();
        } else {
            return Err(Error::Parse {
                pos,
                msg: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    ring: &'a PolyRing,
    tokens: &'a [(usize, Tok)],
    at: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<(usize, &Tok)> {
        self.tokens.get(self.at).map(|(p, t)| (*p, t))
    }

    fn pos(&self) -> usize {
        self.peek().map_or(self.end, |(p, _)| p)
    }

    fn eat(&mut self, c: char) -> bool {
        if matches!(self.peek(), Some((_, Tok::Op(d))) if *d == c) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    // expr := term (('+' | '-') term)*
    fn expr(&mut self) -> Result<Poly<Rational>> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = acc + self.term()?;
            } else if self.eat('-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    // term := unary (('*' | '/') unary)*
    fn term(&mut self) -> Result<Poly<Rational>> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = acc * self.unary()?;
            } else if self.eat('/') {
                let pos = self.pos();
                let d = self.unary()?;
                match d.as_constant() {
                    Some(c) if !c.is_zero() => acc = acc * Poly::constant(c.recip()),
                    Some(_) => {
                        return Err(Error::Parse {
                            pos,
                            msg: "division by zero".into(),
                        })
                    }
                    None => {
                        return Err(Error::Parse {
                            pos,
                            msg: "division by a non-constant polynomial".into(),
                        })
                    }
                }
            } else {
                return Ok(acc);
            }
        }
    }

    // unary := ('-' | '+') unary | power
    fn unary(&mut self) -> Result<Poly<Rational>> {
        if self.eat('-') {
            Ok(-self.unary()?)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    // power := atom ('^' integer)?
    fn power(&mut self) -> Result<Poly<Rational>> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        match self.peek() {
            Some((pos, Tok::Num(s))) => {
                let e: u32 = s.parse().map_err(|_| Error::Parse {
                    pos,
                    msg: format!("exponent '{s}' too large"),
                })?;
                self.at += 1;
                Ok(base.pow(e))
            }
            _ => self.err("expected a nonnegative integer exponent"),
        }
    }

    // atom := number | variable | '(' expr ')'
    fn atom(&mut self) -> Result<Poly<Rational>> {
        match self.peek() {
            Some((_, Tok::Num(s))) => {
                let q = parse_rational(s).expect("digits parse as an integer");
                self.at += 1;
                Ok(Poly::constant(q))
            }
            Some((pos, Tok::Ident(name))) => match self.ring.var(name) {
                Some(v) => {
                    self.at += 1;
                    Ok(v)
                }
                None => Err(Error::Parse {
                    pos,
                    msg: format!("unknown variable '{name}'"),
                }),
            },
            Some((_, Tok::Op('('))) => {
                self.at += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Some((_, t)) => {
                let t = t.to_string();
                self.err(format!("unexpected {t}"))
            }
            None => self.err("unexpected end of input"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn xy() -> PolyRing {
        PolyRing::new(&["x", "y"]).unwrap()
    }

    #[test]
    fn arithmetic() {
        let r = xy();
        let (x, y) = (r.var("x").unwrap(), r.var("y").unwrap());
        let p = (x.clone() + y.clone()) * (x.clone() - y.clone());
        assert_eq!(p, x.pow(2) - y.pow(2));
        assert!((x.clone() - x.clone()).is_zero());
        assert_eq!(p.eval(&[q(3, 1), q(1, 2)]).unwrap(), q(35, 4));
        assert!(p.eval(&[q(1, 1)]).is_err());
    }

    #[test]
    fn parse_and_format() {
        let r = xy();
        let p = r.parse("(x - 1)^2 + 3/4*y - x*y").unwrap();
        assert_eq!(r.format(&p), "x^2 - x*y - 2*x + (3/4)*y + 1");
        assert_eq!(r.parse(&r.format(&p)).unwrap(), p);
        assert_eq!(r.parse("-x + +y").unwrap(), r.parse("y - x").unwrap());
        assert_eq!(
            r.parse("x/2").unwrap().eval(&[q(1, 1), q(0, 1)]).unwrap(),
            q(1, 2)
        );
        assert_eq!(r.format(&r.parse("0*x").unwrap()), "0");
    }

    #[test]
    fn parse_errors_carry_positions() {
        let r = xy();
        let pos = |s: &str| match r.parse(s) {
            Err(Error::Parse { pos, .. }) => pos,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(pos("2x"), 1);
        assert_eq!(pos("x + z"), 4);
        assert_eq!(pos("x + "), 4);
        assert_eq!(pos("(x + y"), 6);
        assert_eq!(pos("x / y"), 4);
        assert_eq!(pos("x / (1 - 1)"), 4);
        assert_eq!(pos("x ^ y"), 4);
        assert_eq!(pos("x $ y"), 2);
    }

    #[test]
    fn ring_validation() {
        assert!(PolyRing::new(&["x", "x"]).is_err());
        assert!(PolyRing::new(&["1x"]).is_err());
        assert!(PolyRing::new::<&str>(&[]).is_ok());
    }
}
