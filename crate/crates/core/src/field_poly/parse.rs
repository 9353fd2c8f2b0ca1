//! Parser for the fixture polynomial syntax: `c*x^a*y^b + ...`.
//!
//! Coefficients are integers reduced modulo p; juxtaposed factors must be
//! joined with `*`. Undeclared symbols are rejected.

use crate::error::{AlgebraError, Result};
use crate::field_poly::poly::Polynomial;
use crate::field_poly::ring::Ring;

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, message: impl Into<String>) -> AlgebraError {
        // column is 1-based and counts bytes on the (single) line
        let line = 1 + self.src[..self.pos.min(self.src.len())].iter().filter(|&&c| c == b'\n').count();
        let col_start = self.src[..self.pos.min(self.src.len())]
            .iter()
            .rposition(|&c| c == b'\n')
            .map(|p| p + 1)
            .unwrap_or(0);
        AlgebraError::Parse {
            line,
            column: self.pos - col_start + 1,
            message: message.into(),
        }
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse::<u64>()
            .map_err(|_| {
                self.pos = start;
                self.err("integer too large")
            })
    }

    fn ident(&mut self) -> &'a str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }
}

pub fn parse_polynomial(s: &str, ring: &Ring) -> Result<Polynomial> {
    let k = ring.field();
    let p = k.p() as u64;
    let mut cur = Cursor { src: s.as_bytes(), pos: 0 };
    let mut terms = Vec::new();
    let mut first = true;
    loop {
        let mut negative = false;
        match cur.peek() {
            None if first => return Err(cur.err("empty polynomial")),
            None => return Err(cur.err("dangling operator")),
            Some(b'+') if !first => cur.pos += 1,
            Some(b'-') => {
                cur.pos += 1;
                negative = true;
            }
            Some(_) if !first => return Err(cur.err("expected '+' or '-'")),
            Some(_) => {}
        }
        first = false;
        let mut coeff: u64 = 1;
        let mut exps = vec![0u16; ring.nvars()];
        let mut expect_factor = true;
        while expect_factor {
            match cur.peek() {
                Some(c) if c.is_ascii_digit() => {
                    coeff = coeff * (cur.number()? % p) % p;
                }
                Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                    let at = cur.pos;
                    let name = cur.ident();
                    let v = ring.var_index(name).ok_or_else(|| {
                        cur.pos = at;
                        cur.err(format!("undeclared symbol {name:?}"))
                    })?;
                    let mut e: u64 = 1;
                    if cur.peek() == Some(b'^') {
                        cur.pos += 1;
                        e = cur.number()?;
                    }
                    let total = exps[v] as u64 + e;
                    if total > u16::MAX as u64 {
                        return Err(cur.err("exponent too large"));
                    }
                    exps[v] = total as u16;
                }
                _ => return Err(cur.err("expected coefficient or variable")),
            }
            expect_factor = cur.peek() == Some(b'*');
            if expect_factor {
                cur.pos += 1;
            }
        }
        let c = if negative { (p - coeff % p) % p } else { coeff % p };
        terms.push((c as u32, ring.monomial(&exps)));
        if cur.peek().is_none() {
            break;
        }
    }
    Ok(Polynomial::from_terms(terms, k))
}
