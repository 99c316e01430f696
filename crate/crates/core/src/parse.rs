//! Text grammar for polynomials.
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := power (('*'|'/') power)*
//! power   := atom ('^' integer)?
//! atom    := integer | 'X' integer | '(' expr ')' | '-' atom
//! ```
//!
//! Division is only allowed by nonzero constants, so `1/4*X1^2` and `X1^2/4`
//! both parse.

use alloc::format;
use alloc::string::String;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::poly::{Poly, Ring};
use crate::scalar::parse_bigint;

pub fn parse_poly(ring: Ring, src: &str) -> Result<Poly> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, ring };
    p.skip_ws();
    if p.pos == p.src.len() {
        return Err(p.err("empty polynomial"));
    }
    let f = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(f)
}

/// Parses and rejects non-homogeneous input.
pub fn parse_form(ring: Ring, src: &str) -> Result<Poly> {
    let f = parse_poly(ring, src)?;
    if f.is_homogeneous() {
        Ok(f)
    } else {
        Err(Error::NotHomogeneous)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: Ring,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: String::from(msg) }
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

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -&self.term()?
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.power()?;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.power()?;
                    if d.degree().is_some_and(|k| k > 0) {
                        return Err(Error::Parse { pos: at, msg: "division by a non-constant".into() });
                    }
                    let c = d.lead_coeff().cloned().unwrap_or_else(|| self.ring.field.zero());
                    let inv = c.inv().map_err(|_| Error::Parse { pos: at, msg: "division by zero".into() })?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = u32::try_from(&e).ok().filter(|&e| e <= 4096).ok_or_else(|| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
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
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.atom()?)
            }
            Some(b'X') | Some(b'x') => {
                self.pos += 1;
                let at = self.pos;
                let i = self.integer()?;
                let i = usize::try_from(&i).ok().filter(|&i| i < self.ring.nvars).ok_or_else(|| Error::Parse {
                    pos: at,
                    msg: format!("variable index out of range for {} variables", self.ring.nvars),
                })?;
                Ok(self.ring.var(i))
            }
            Some(c) if c.is_ascii_digit() => {
                let at = self.pos;
                let n = self.integer()?;
                let c = self
                    .ring
                    .field
                    .ratio(&n, &BigInt::from(1))
                    .map_err(|e| Error::Parse { pos: at, msg: format!("{e}") })?;
                Ok(Poly::constant(self.ring, c))
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let digits = core::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        parse_bigint(digits).ok_or_else(|| self.err("bad integer"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;
    use alloc::string::ToString;

    fn r() -> Ring {
        Ring::new(3, Field::Rational)
    }

    #[test]
    fn round_trip_canonical_text() {
        for s in [
            "X1^3 - 4*X0^2*X1",
            "X0^2 + X0*X1 + 1/4*X1^2 - 1/2*X0*X2 - 1/4*X1*X2",
            "-X2^3 + 1/4*X1*X2^2 + X0*X2^2",
            "0",
        ] {
            let f = parse_poly(r(), s).unwrap();
            let again = parse_poly(r(), &f.to_string()).unwrap();
            assert_eq!(f, again, "{s}");
        }
    }

    #[test]
    fn products_and_fractions() {
        let a = parse_poly(r(), "(X2-X0)*(X1^2+X2^2-4*X0^2)").unwrap();
        assert!(a.is_homogeneous());
        assert_eq!(a.degree(), Some(3));
        let b = parse_poly(r(), "X1^2/4").unwrap();
        assert_eq!(b, parse_poly(r(), "1/4*X1^2").unwrap());
    }

    #[test]
    fn errors_are_positioned() {
        assert!(matches!(parse_poly(r(), "X1 + X7"), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!(parse_poly(r(), "X1 +"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(r(), "X1/X2"), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly(r(), "1/0"), Err(Error::Parse { .. })));
        assert_eq!(parse_form(r(), "X1 + 1"), Err(Error::NotHomogeneous));
        let f7 = Ring::new(2, Field::prime(7).unwrap());
        assert!(parse_poly(f7, "X1/7").is_err());
    }
}
