//! Text syntax for rational functions in configs and on the CLI.
//!
//! Grammar: integer coefficients, the variable `t`, the extension
//! generator `u` (only meaningful when k > 1), operators `+ - * / ^` and
//! parentheses. Exponents are (optionally signed) integer literals.
//! Everything is parsed exactly and reduced mod p, e.g.
//! `(t^2+1)/(t*(t+1))`.

use thiserror::Error;

use crate::field::{FieldElem, FieldRef};
use crate::ratfunc::{RatFunc, RatFuncError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("unexpected character {found:?} at byte {pos}")]
    UnexpectedChar { pos: usize, found: char },
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("expected {expected} at byte {pos}")]
    Expected { pos: usize, expected: &'static str },
    #[error("integer literal out of range at byte {pos}")]
    IntOutOfRange { pos: usize },
    #[error("the generator `u` requires an extension field (k > 1)")]
    GeneratorInPrimeField,
    #[error("arithmetic error in expression: {0}")]
    Arith(#[from] RatFuncError),
}

pub fn parse_ratfunc(input: &str, spec: &FieldRef) -> Result<RatFunc, ParseError> {
    let mut p = Parser {
        bytes: input.as_bytes(),
        pos: 0,
        spec: spec.clone(),
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.unexpected());
    }
    Ok(value)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    spec: FieldRef,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.bytes.get(self.pos).map_or(false, |b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn unexpected(&self) -> ParseError {
        match self.bytes.get(self.pos) {
            Some(&b) => ParseError::UnexpectedChar {
                pos: self.pos,
                found: b as char,
            },
            None => ParseError::UnexpectedEnd,
        }
    }

    fn expr(&mut self) -> Result<RatFunc, ParseError> {
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

    fn term(&mut self) -> Result<RatFunc, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    acc = acc.div(&self.factor()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<RatFunc, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(b'+') => {
                self.pos += 1;
                self.factor()
            }
            _ => {
                let base = self.primary()?;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let e = self.int_literal()?;
                    Ok(base.pow(e)?)
                } else {
                    Ok(base)
                }
            }
        }
    }

    fn primary(&mut self) -> Result<RatFunc, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(ParseError::Expected {
                        pos: self.pos,
                        expected: "closing parenthesis",
                    });
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b't') => {
                self.pos += 1;
                Ok(RatFunc::t(&self.spec))
            }
            Some(b'u') => {
                self.pos += 1;
                if self.spec.k() == 1 {
                    return Err(ParseError::GeneratorInPrimeField);
                }
                Ok(RatFunc::from_elem(FieldElem::generator(&self.spec)))
            }
            Some(b) if b.is_ascii_digit() => {
                let n = self.int_literal()?;
                Ok(RatFunc::from_int(&self.spec, n))
            }
            _ => Err(self.unexpected()),
        }
    }

    fn int_literal(&mut self) -> Result<i64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let mut negative = false;
        if self.bytes.get(self.pos) == Some(&b'-') {
            negative = true;
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.bytes.get(self.pos).map_or(false, |b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.unexpected());
        }
        let text = std::str::from_utf8(&self.bytes[digits_start..self.pos]).unwrap();
        let mag: i64 = text
            .parse()
            .map_err(|_| ParseError::IntOutOfRange { pos: start })?;
        Ok(if negative { -mag } else { mag })
    }
}
