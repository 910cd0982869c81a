//! A minimal polynomial expression grammar over the ring generators
//! `x1, ..., xn`, evaluated directly into normal form.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' nat)?
//! atom   := nat | 'x' nat | '(' expr ')'
//! ```
//!
//! No division and no variables beyond the generators; the ring is
//! generated in degree two, so this is all the CLI needs.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::BottMatrix;
use crate::ring::{multiply, CohomClass};
use crate::scalar::Int;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    matrix: &'a BottMatrix,
}

/// Parses and evaluates an expression in the ring of `a`.
pub fn eval(a: &BottMatrix, input: &str) -> Result<CohomClass<Int>> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
        matrix: a,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.fail("unexpected trailing input"));
    }
    Ok(value)
}

impl<'a> Parser<'a> {
    fn fail(&self, msg: &str) -> Error {
        Error::Parse(format!("{} at byte {}", msg, self.pos))
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

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<Int> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.fail("expected a number"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(Int::from_str(text).expect("digits parse"))
    }

    fn expr(&mut self) -> Result<CohomClass<Int>> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?)?;
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<CohomClass<Int>> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            let rhs = self.unary()?;
            acc = multiply(self.matrix, &acc, &rhs)?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<CohomClass<Int>> {
        if self.eat(b'-') {
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<CohomClass<Int>> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let e = self.nat()?;
        let e: u32 = e
            .try_into()
            .map_err(|_| self.fail("exponent too large"))?;
        let n = self.matrix.stage();
        let mut acc = CohomClass::one(n);
        for _ in 0..e {
            acc = multiply(self.matrix, &acc, &base)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<CohomClass<Int>> {
        let n = self.matrix.stage();
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.fail("expected ')'"));
                }
                Ok(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                let ix = self.nat()?;
                let ix: usize = ix
                    .try_into()
                    .map_err(|_| self.fail("generator index too large"))?;
                if ix == 0 || ix > n {
                    return Err(Error::IndexOutOfRange { index: ix, n });
                }
                Ok(CohomClass::var(n, ix))
            }
            Some(c) if c.is_ascii_digit() => Ok(CohomClass::constant(n, self.nat()?)),
            Some(_) => {
                self.bump();
                Err(self.fail("unexpected character"))
            }
            None => Err(self.fail("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hirzebruch() -> BottMatrix {
        BottMatrix::from_rows(&[&[0, 1], &[0, 0]]).unwrap()
    }

    #[test]
    fn relation_rewrites() {
        let h = hirzebruch();
        assert_eq!(eval(&h, "x2^2").unwrap().to_string(), "x1*x2");
        assert_eq!(eval(&h, "x1^2").unwrap().to_string(), "0");
        let a = BottMatrix::from_rows(&[&[0, 0, 1], &[0, 0, 1], &[0, 0, 0]]).unwrap();
        assert_eq!(eval(&a, "(x1+x2)^2").unwrap().to_string(), "2*x1*x2");
    }

    #[test]
    fn precedence_and_unary_minus() {
        let h = hirzebruch();
        assert_eq!(eval(&h, "2 + 3*x1").unwrap().to_string(), "2 + 3*x1");
        assert_eq!(eval(&h, "-x1^2").unwrap().to_string(), "0");
        assert_eq!(eval(&h, "-x1 * x2").unwrap().to_string(), "-x1*x2");
        assert_eq!(eval(&h, "(x1 - x2)*x2").unwrap().to_string(), "0");
        assert_eq!(eval(&h, "x1^0").unwrap().to_string(), "1");
    }

    #[test]
    fn errors() {
        let h = hirzebruch();
        assert!(matches!(eval(&h, "x3"), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(eval(&h, "x0"), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(eval(&h, "x1 +"), Err(Error::Parse(_))));
        assert!(matches!(eval(&h, "(x1"), Err(Error::Parse(_))));
        assert!(matches!(eval(&h, "x1 x2"), Err(Error::Parse(_))));
        assert!(matches!(eval(&h, "y1"), Err(Error::Parse(_))));
        assert!(matches!(eval(&h, ""), Err(Error::Parse(_))));
    }
}
