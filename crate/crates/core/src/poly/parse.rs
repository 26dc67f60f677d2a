//! Text syntax for polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | variable | '(' expr ')'
//! ```
//!
//! Whitespace is insignificant. Integer literals are mapped into the field.
//! Over an extension field the symbol `t` (when it is not a ring variable)
//! denotes the class of `t` in GF(p)[t]/(m), so printed coefficients parse back.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{Poly, PolyRing};
use crate::error::{Error, Result};
use crate::field::Field;

pub fn parse_poly<F: Field>(ring: &Arc<PolyRing<F>>, text: &str) -> Result<Poly<F>> {
    let mut p = Parser { ring, src: text.as_bytes(), pos: 0 };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(Error::Syntax { position: 0, message: "empty input".into() });
    }
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.unexpected());
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    ring: &'a Arc<PolyRing<F>>,
    src: &'a [u8],
    pos: usize,
}

impl<F: Field> Parser<'_, F> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn unexpected(&self) -> Error {
        match self.src.get(self.pos) {
            Some(b'/') => Error::DivisionInInput(self.pos),
            Some(&c) => Error::Syntax { position: self.pos, message: format!("unexpected `{}`", c as char) },
            None => Error::Syntax { position: self.pos, message: "unexpected end of input".into() },
        }
    }

    fn expr(&mut self) -> Result<Poly<F>> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly<F>> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Some(b'/') => return Err(Error::DivisionInInput(self.pos)),
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<Poly<F>> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Poly<F>> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(Error::Syntax { position: start, message: "expected exponent".into() });
            }
            let e: u32 = digits
                .parse()
                .map_err(|_| Error::Syntax { position: start, message: "exponent too large".into() })?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<Poly<F>> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(match self.src.get(self.pos) {
                        None => Error::Syntax { position: self.pos, message: "missing `)`".into() },
                        Some(_) => self.unexpected(),
                    });
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let n: BigInt = d.parse().expect("digits");
                Ok(self.ring.constant(self.ring.field().from_bigint(&n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                if let Some(i) = self.ring.index_of(name) {
                    return Ok(self.ring.var(i));
                }
                if let Some(c) = self.ring.field().named_constant(name) {
                    return Ok(self.ring.constant(c));
                }
                Err(Error::UnknownVariable { name: name.to_string(), position: start })
            }
            _ => Err(self.unexpected()),
        }
    }
}
