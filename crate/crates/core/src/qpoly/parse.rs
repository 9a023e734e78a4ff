//! Recursive-descent parser for polynomial text.
//!
//! ```text
//! expr   := term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' uint)?
//! base   := int | int '/' int | var | '(' expr ')'
//! ```
//! A leading sign is accepted before any term.

use std::sync::Arc;

use super::coefficient::Coefficient;
use super::poly::{Monomial, QPoly, Ring};
use super::PolyError;

pub fn parse(text: &str, ring: &Arc<Ring>) -> Result<QPoly, PolyError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

/// Parses a single monomial such as `w^2*y` (no coefficient).
pub fn parse_monomial(text: &str, ring: &Arc<Ring>) -> Result<Monomial, PolyError> {
    let f = parse(text, ring)?;
    let mut it = f.terms();
    match (it.next(), it.next()) {
        (Some((m, c)), None) if c.is_one() => Ok(m.clone()),
        _ => Err(PolyError::Syntax { position: 0, message: format!("`{text}` is not a monomial") }),
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<Ring>,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> PolyError {
        PolyError::Syntax { position: self.pos, message: msg.to_string() }
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

    fn expr(&mut self) -> Result<QPoly, PolyError> {
        let mut acc = QPoly::zero(self.ring);
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<QPoly, PolyError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<QPoly, PolyError> {
        let b = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.uint()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(b.pow(e));
        }
        Ok(b)
    }

    fn uint(&mut self) -> Result<u64, PolyError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an unsigned integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        s.parse().map_err(|_| PolyError::Syntax { position: start, message: "integer too large".into() })
    }

    fn base(&mut self) -> Result<QPoly, PolyError> {
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
                let n = self.uint()? as i64;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let d = self.uint()? as i64;
                    if d == 0 {
                        return Err(self.err("zero denominator"));
                    }
                    return Ok(QPoly::constant(self.ring, Coefficient::from_ratio(n, d)));
                }
                Ok(QPoly::constant(self.ring, Coefficient::from_i64(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.ring.index(name) {
                    Some(_) => Ok(QPoly::var(self.ring, name)),
                    None => Err(PolyError::UnknownVariable(name.to_string())),
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

    #[test]
    fn expands_and_cancels() {
        let r = Ring::new(&["x", "y"]);
        assert!(parse("(x+y)^2 - x^2 - y^2 - 2*x*y", &r).unwrap().is_zero());
    }

    #[test]
    fn two_terms() {
        let r = Ring::new(&["x", "y", "z", "t", "w"]);
        let f = parse("w^2*y + t^3*x", &r).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.to_string(), "x*t^3 + y*w^2");
    }

    #[test]
    fn fractions_and_errors() {
        let r = Ring::new(&["x"]);
        assert_eq!(parse("3/6*x", &r).unwrap().to_string(), "1/2*x");
        assert!(matches!(parse("x + q", &r), Err(PolyError::UnknownVariable(n)) if n == "q"));
        assert!(matches!(parse("x + * 2", &r), Err(PolyError::Syntax { position: 4, .. })));
        assert!(parse("(x", &r).is_err());
    }
}
