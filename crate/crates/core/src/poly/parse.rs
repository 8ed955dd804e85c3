//! Recursive-descent reader for the polynomial text grammar.
//!
//! ```text
//! expr     := ['+'|'-'] term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := atom ['^' exponent]
//! atom     := integer | identifier | '(' expr ')'
//! exponent := ['-'] integer | '(' ['-'] integer ['/' integer] ')'
//! ```

use num_bigint::BigInt;

use super::{scaled_exponent, Monomial, Polynomial, Var, EXP_SCALE};
use crate::error::{Error, Result};

/// Parse a polynomial from text.
pub fn parse(text: &str) -> Result<Polynomial> {
    let chars: Vec<char> = text.chars().collect();
    let mut parser = Parser { chars, pos: 0 };
    if parser.peek().is_none() {
        return Err(parser.error("empty expression"));
    }
    let value = parser.expr()?;
    if parser.peek().is_some() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(value)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn error(&self, what: &str) -> Error {
        let text: String = self.chars.iter().collect();
        Error::parse(0, format!("polynomial `{text}` at offset {}: {what}", self.pos))
    }

    fn peek(&mut self) -> Option<char> {
        while matches!(self.chars.get(self.pos), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
        self.chars.get(self.pos).copied()
    }

    fn raw(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut negate = false;
        if self.eat('-') {
            negate = true;
        } else {
            self.eat('+');
        }
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat('+') {
                acc += self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let scaled = self.exponent()?;
        base.pow_scaled(scaled).map_err(|e| self.error(&e.to_string()))
    }

    fn atom(&mut self) -> Result<Polynomial> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.digits();
                let value: BigInt = digits.parse().map_err(|_| self.error("bad integer"))?;
                Ok(Polynomial::constant(value))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while matches!(self.raw(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                Ok(Polynomial::monomial(Monomial::var_scaled(
                    Var::new(&name),
                    EXP_SCALE,
                )))
            }
            _ => Err(self.error("expected a number, a variable or `(`")),
        }
    }

    fn digits(&mut self) -> String {
        self.peek();
        let start = self.pos;
        while matches!(self.raw(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }

    fn signed_int(&mut self) -> Result<i64> {
        let negative = self.eat('-');
        let digits = self.digits();
        let value: i64 = digits
            .parse()
            .map_err(|_| self.error("expected an integer exponent"))?;
        Ok(if negative { -value } else { value })
    }

    fn exponent(&mut self) -> Result<i64> {
        let (num, den) = if self.eat('(') {
            let num = self.signed_int()?;
            let den = if self.eat('/') { self.signed_int()? } else { 1 };
            if !self.eat(')') {
                return Err(self.error("expected `)` after exponent"));
            }
            (num, den)
        } else {
            (self.signed_int()?, 1)
        };
        scaled_exponent(num, den).ok_or_else(|| self.error("exponent is not a multiple of 1/4"))
    }
}
