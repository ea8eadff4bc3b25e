//! Recursive-descent parser for polynomial expressions over F_q.
//!
//! Grammar: `expr := term (('+'|'-') term)*`, `term := factor ('*' factor)*`,
//! `factor := '-' factor | atom ('^' int)?`, `atom := int | '[' int ']' | ident | '(' expr ')'`.
//! Integers map into the prime field; `[v]` is the field element with integer code v.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FiniteField;
use crate::poly::FqPoly;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    field: &'static FiniteField,
    vars: Arc<[String]>,
}

pub fn parse_poly(field: &'static FiniteField, vars: Arc<[String]>, src: &str) -> Result<FqPoly> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, field, vars };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(out)
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
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
    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
    fn int(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap().parse().map_err(|_| self.err("integer too large"))
    }

    fn expr(&mut self) -> Result<FqPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }
    fn term(&mut self) -> Result<FqPoly> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = acc.checked_mul(&f)?;
        }
        Ok(acc)
    }
    fn factor(&mut self) -> Result<FqPoly> {
        if self.eat(b'-') {
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.int()?;
            let e = u32::try_from(e).map_err(|_| Error::ExponentOverflow)?;
            return base.checked_pow(e);
        }
        Ok(base)
    }
    fn atom(&mut self) -> Result<FqPoly> {
        let c = self.peek().ok_or_else(|| self.err("unexpected end of input"))?;
        if c == b'(' {
            self.pos += 1;
            let e = self.expr()?;
            if !self.eat(b')') {
                return Err(self.err("expected ')'"));
            }
            return Ok(e);
        }
        if c == b'[' {
            self.pos += 1;
            let v = self.int()?;
            if !self.eat(b']') {
                return Err(self.err("expected ']'"));
            }
            let el = self.field.elem(u32::try_from(v).unwrap_or(u32::MAX)).map_err(|_| self.err("element out of range"))?;
            return Ok(FqPoly::constant(self.field, self.vars.clone(), el));
        }
        if c.is_ascii_digit() {
            let v = self.int()?;
            let r = (v % self.field.p() as u64) as i64;
            return Ok(FqPoly::constant(self.field, self.vars.clone(), self.field.int(r)));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            let start = self.pos;
            while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
                self.pos += 1;
            }
            let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
            let i = self.vars.iter().position(|v| v == name).ok_or_else(|| Error::Parse {
                pos: start,
                msg: format!("unknown variable '{name}'"),
            })?;
            return Ok(FqPoly::var(self.field, self.vars.clone(), i));
        }
        Err(self.err("unexpected character"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::var_names;

    #[test]
    fn parses_and_reports_positions() {
        let f = FiniteField::get(3).unwrap();
        let v = var_names(&["x", "y"]);
        let g = parse_poly(f, v.clone(), "(x+y)^3 - x^3").unwrap();
        assert_eq!(g, FqPoly::var(f, v.clone(), 1).pow(3));
        assert_eq!(parse_poly(f, v.clone(), "4*x").unwrap(), FqPoly::var(f, v.clone(), 0));
        match parse_poly(f, v.clone(), "x + z") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(parse_poly(f, v, "x +").is_err());
    }
}
