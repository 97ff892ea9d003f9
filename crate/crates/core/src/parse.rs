//! A small expression parser for polynomials in the chart coordinates.
//!
//! Grammar: sums and differences of products of factors, where a factor is
//! a variable `x<k>` (optionally `^<exponent>`), an integer or rational
//! literal, or a parenthesized expression. `*` is required between factors.
//! Errors carry the byte offset that caused them.

use std::fmt;

use crate::poly::Poly;
use crate::scalar::Field;

/// A parse failure at a byte position of the input.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

/// Parse a polynomial in `x1..x<n_vars>`. Scalar literals go through
/// `parse_scalar`, so the same grammar serves every coefficient field.
pub fn parse_poly<F: Field>(
    src: &str,
    n_vars: usize,
    parse_scalar: &dyn Fn(&str) -> Result<F, String>,
) -> Result<Poly<F>, ParseError> {
    let mut p = Parser {
        src,
        bytes: src.as_bytes(),
        pos: 0,
        n_vars,
        parse_scalar,
    };
    let poly = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(poly)
}

struct Parser<'a, F: Field> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
    n_vars: usize,
    parse_scalar: &'a dyn Fn(&str) -> Result<F, String>,
}

impl<'a, F: Field> Parser<'a, F> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Poly<F>, ParseError> {
        let mut negate = false;
        if let Some(c) = self.peek() {
            if c == b'-' {
                self.pos += 1;
                negate = true;
            } else if c == b'+' {
                self.pos += 1;
            }
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                b'-' => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly<F>, ParseError> {
        let mut acc = self.factor()?;
        while let Some(b'*') = self.peek() {
            self.pos += 1;
            let f = self.factor()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly<F>, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                self.maybe_pow(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                let idx = self.integer("variable index")?;
                if idx == 0 || idx as usize > self.n_vars {
                    self.pos -= 1; // point at the digits
                    return Err(self.error(format!(
                        "variable x{idx} out of range (1..={})",
                        self.n_vars
                    )));
                }
                self.maybe_pow(Poly::var(idx as usize, self.n_vars))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self
                    .bytes
                    .get(self.pos)
                    .is_some_and(|b| b.is_ascii_digit() || *b == b'/')
                {
                    self.pos += 1;
                }
                let lit = &self.src[start..self.pos];
                let scalar = (self.parse_scalar)(lit).map_err(|m| ParseError {
                    position: start,
                    message: m,
                })?;
                self.maybe_pow(Poly::constant(scalar, self.n_vars))
            }
            Some(_) => Err(self.error("expected a variable, literal, or '('")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn maybe_pow(&mut self, base: Poly<F>) -> Result<Poly<F>, ParseError> {
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer("exponent")?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn integer(&mut self, what: &str) -> Result<u32, ParseError> {
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(format!("expected {what}")));
        }
        self.src[start..self.pos].parse().map_err(|_| ParseError {
            position: start,
            message: format!("{what} out of range"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{parse_rat, Rat};

    fn parse(src: &str, n: usize) -> Result<Poly<Rat>, ParseError> {
        parse_poly(src, n, &parse_rat)
    }

    fn x(i: usize, n: usize) -> Poly<Rat> {
        Poly::var(i, n)
    }

    #[test]
    fn parses_the_usual_shapes() {
        assert_eq!(parse("x1", 2).unwrap(), x(1, 2));
        assert_eq!(
            parse("x1^3 - x2^2", 2).unwrap(),
            &x(1, 2).pow(3) - &x(2, 2).pow(2)
        );
        let two = Poly::constant(crate::scalar::Field::embed_int(&Rat::new(1.into(), 1.into()), 2), 2);
        assert_eq!(
            parse("2*x1*x2 + x2", 2).unwrap(),
            &(&(&two * &x(1, 2)) * &x(2, 2)) + &x(2, 2)
        );
        assert_eq!(
            parse("-x1 + 1/2", 2).unwrap(),
            &Poly::constant(Rat::new(1.into(), 2.into()), 2) - &x(1, 2)
        );
        assert_eq!(
            parse("(x1 - x2)^2", 2).unwrap(),
            (&x(1, 2) - &x(2, 2)).pow(2)
        );
    }

    #[test]
    fn errors_are_positional() {
        let e = parse("x1 + ", 2).unwrap_err();
        assert_eq!(e.position, 5);
        let e = parse("x3", 2).unwrap_err();
        assert!(e.message.contains("out of range"));
        let e = parse("x1 ^", 2).unwrap_err();
        assert!(e.message.contains("exponent"));
        let e = parse("x1 x2", 2).unwrap_err();
        assert_eq!(e.position, 3);
    }
}
