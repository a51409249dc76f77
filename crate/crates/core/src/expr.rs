//! Rational arithmetic expressions over named parameters.
//!
//! Used for parameterized mask families, e.g. `"-1887/307328-321/10976*t-5/147*t^2"`.
//! Grammar: `+ - * / ^`, parentheses, integer literals and identifiers.

use crate::error::{Error, Result};
use crate::rational::{powi, Q};
use num_traits::Zero;
use std::collections::BTreeMap;

pub type Params = BTreeMap<String, Q>;

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    params: &'a Params,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> Error {
        Error::MalformedFile(format!("expression {:?}: {msg} at byte {}", self.src, self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Q> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc += self.term()?;
                }
                b'-' => {
                    self.pos += 1;
                    acc -= self.term()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Q> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc *= self.unary()?;
                }
                b'/' => {
                    self.pos += 1;
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    acc /= d;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Q> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Q> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let neg = if self.peek() == Some(b'-') {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = self.integer()?;
            let e = i64::try_from(e.to_integer()).map_err(|_| self.err("exponent too large"))?;
            return Ok(powi(&base, if neg { -e } else { e }));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<Q> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
        Ok(Q::from_integer(text.parse().map_err(|_| self.err("bad integer"))?))
    }

    fn atom(&mut self) -> Result<Q> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => self.integer(),
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).unwrap();
                self.params
                    .get(name)
                    .cloned()
                    .ok_or_else(|| Error::MalformedFile(format!("unknown parameter {name:?} in {:?}", self.src)))
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

/// Evaluates `src` with the given parameter values.
pub fn eval(src: &str, params: &Params) -> Result<Q> {
    let mut p = Parser { s: src.as_bytes(), pos: 0, params, src };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

/// Parameters from `(name, value)` pairs.
pub fn params(pairs: &[(&str, Q)]) -> Params {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}
