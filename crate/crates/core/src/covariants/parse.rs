//! Parser for inline polynomials such as `120*a0*a6 - 3*a3^2`.

use num_bigint::BigInt;

use crate::arith::Rational;

use super::{CovariantError, MultiPoly, VarSet};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: VarSet,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, CovariantError> {
        Err(CovariantError::Parse { pos: self.pos, msg: msg.into() })
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

    fn number(&mut self) -> Result<BigInt, CovariantError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn expr(&mut self) -> Result<MultiPoly, CovariantError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
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

    fn term(&mut self) -> Result<MultiPoly, CovariantError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.number()?;
                    if d == BigInt::from(0) {
                        self.pos = at;
                        return self.err("division by zero");
                    }
                    acc = acc.scale(&Rational::new(1, d).expect("nonzero"));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<MultiPoly, CovariantError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.number()?;
            let e: u32 = match u32::try_from(e) {
                Ok(e) if e <= 64 => e,
                _ => return self.err("exponent too large"),
            };
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, CovariantError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                Ok(MultiPoly::constant(self.vars, Rational::from_int(n)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                match self.vars.index_of(name) {
                    Some(i) => Ok(MultiPoly::var(self.vars, i, &())),
                    None => {
                        self.pos = start;
                        self.err(format!("unknown variable {name:?}"))
                    }
                }
            }
            Some(c) => self.err(format!("unexpected character {:?}", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse a polynomial with integer or fractional coefficients over `vars`.
/// Errors carry the byte offset of the offending token.
pub fn parse_poly(input: &str, vars: VarSet) -> Result<MultiPoly, CovariantError> {
    let mut p = Parser { src: input.as_bytes(), pos: 0, vars };
    let poly = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covariants::SEXTIC;

    #[test]
    fn round_trips_canonical_text() {
        let text = "120*a0*a6 - 20*a1*a5 + 8*a2*a4 - 3*a3^2";
        assert_eq!(parse_poly(text, SEXTIC).unwrap().render(), text);
    }

    #[test]
    fn handles_parentheses_and_fractions() {
        let p = parse_poly("-(a0 + a1)^2/2", SEXTIC).unwrap();
        assert_eq!(p.render(), "-1/2*a0^2 - a0*a1 - 1/2*a1^2");
    }

    #[test]
    fn reports_positions() {
        assert_eq!(
            parse_poly("a0 + b7", SEXTIC),
            Err(CovariantError::Parse { pos: 5, msg: "unknown variable \"b7\"".into() })
        );
        assert!(matches!(parse_poly("a0 +", SEXTIC), Err(CovariantError::Parse { pos: 4, .. })));
        assert!(matches!(parse_poly("a0 a1", SEXTIC), Err(CovariantError::Parse { pos: 3, .. })));
    }
}
