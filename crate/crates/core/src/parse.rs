//! Text syntax for polynomials: integer (or `a/b`) coefficients, variables
//! `x, y, z` (projective) or `u, v` (local), `^` for powers, optional `*`,
//! parentheses.
//!
//! ```
//! use curvereg::parse::parse_projective;
//! let f = parse_projective("y^2*z - x^3 - x^2*z").unwrap();
//! assert_eq!(f.degree(), Some(3));
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::Rationals;
use crate::monomial::MonomialOrder;
use crate::poly::{Polynomial, QPoly, LOCAL_VARS, PROJECTIVE_VARS};

/// Parses a polynomial in `x, y, z` (grevlex order).
pub fn parse_projective(src: &str) -> Result<QPoly> {
    Parser::new(src, &PROJECTIVE_VARS, MonomialOrder::GrevlexGlobal).parse()
}

/// Parses a polynomial in `u, v` (local order).
pub fn parse_local(src: &str) -> Result<QPoly> {
    Parser::new(src, &LOCAL_VARS, MonomialOrder::AntiGradedLocal).parse()
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    vars: &'a [&'a str],
    order: MonomialOrder,
}

impl<'a> Parser<'a> {
    fn new(src: &str, vars: &'a [&'a str], order: MonomialOrder) -> Self {
        Parser { chars: src.chars().collect(), pos: 0, vars, order }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        // Column is 1-based; the source is a single line.
        Error::Parse { line: 1, column: self.pos + 1, message: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn zero(&self) -> QPoly {
        Polynomial::zero(Rationals, self.vars.len(), self.order)
    }

    fn constant(&self, c: BigRational) -> QPoly {
        Polynomial::constant(Rationals, self.vars.len(), self.order, c)
    }

    fn parse(mut self) -> Result<QPoly> {
        if self.peek().is_none() {
            return Err(self.err("empty polynomial"));
        }
        let p = self.expr()?;
        if let Some(c) = self.peek() {
            return Err(self.err(format!("unexpected character '{c}'")));
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<QPoly> {
        let mut acc = self.zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    false
                }
                Some('-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if sign { acc.sub(&t) } else { acc.add(&t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<QPoly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = acc.mul(&f);
                }
                Some('/') => {
                    self.pos += 1;
                    let n = self.integer()?;
                    if n.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    acc = acc.scale(&BigRational::new(BigInt::one(), n));
                }
                Some(c) if c == '(' || c.is_ascii_digit() || c.is_alphabetic() => {
                    let f = self.power()?;
                    acc = acc.mul(&f);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<QPoly> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.err("exponent must be a small non-negative integer"))?;
            if e > 200 {
                return Err(self.err("exponent too large"));
            }
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<QPoly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(self.constant(BigRational::from_integer(n)))
            }
            Some(c) if c.is_alphabetic() => {
                let name = c.to_string();
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => {
                        self.pos += 1;
                        Ok(Polynomial::var(Rationals, self.vars.len(), self.order, i))
                    }
                    None => Err(self.err(format!(
                        "unknown variable '{c}' (expected one of {})",
                        self.vars.join(", ")
                    ))),
                }
            }
            Some('-') => {
                self.pos += 1;
                Ok(self.power()?.neg())
            }
            Some(c) => Err(self.err(format!("unexpected character '{c}'"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits parse as integer"))
    }
}
