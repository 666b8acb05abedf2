//! Recursive-descent parser for the canonical polynomial text syntax.
//!
//! Grammar: `+ - * / ^` with parentheses, integer or `a/b` coefficients and
//! named variables; whitespace-insensitive. `/` is only allowed when the
//! divisor is a nonzero constant, `^` takes a nonnegative integer literal.
//! `parse_poly(to_string(f)) == f` for every canonical polynomial.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{MultiPoly, Scalar, VarSet};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.col,
            message: message.into(),
        }
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.src.get(self.pos).copied()?;
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize, usize)>> {
        let mut out = Vec::new();
        loop {
            while let Some(&c) = self.src.get(self.pos) {
                if c.is_ascii_whitespace() {
                    self.bump();
                } else {
                    break;
                }
            }
            let (line, col) = (self.line, self.col);
            let Some(&c) = self.src.get(self.pos) else {
                return Ok(out);
            };
            let tok = match c {
                b'+' => {
                    self.bump();
                    Tok::Plus
                }
                b'-' => {
                    self.bump();
                    Tok::Minus
                }
                b'*' => {
                    self.bump();
                    Tok::Star
                }
                b'/' => {
                    self.bump();
                    Tok::Slash
                }
                b'^' => {
                    self.bump();
                    Tok::Caret
                }
                b'(' => {
                    self.bump();
                    Tok::LParen
                }
                b')' => {
                    self.bump();
                    Tok::RParen
                }
                b'0'..=b'9' => {
                    let start = self.pos;
                    while matches!(self.src.get(self.pos), Some(b'0'..=b'9')) {
                        self.bump();
                    }
                    let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    Tok::Num(BigInt::from_str(text).unwrap())
                }
                c if c.is_ascii_alphabetic() || c == b'_' => {
                    let start = self.pos;
                    while matches!(self.src.get(self.pos),
                        Some(c) if c.is_ascii_alphanumeric() || *c == b'_')
                    {
                        self.bump();
                    }
                    let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    Tok::Ident(text.to_string())
                }
                other => return Err(self.err(format!("unexpected character `{}`", other as char))),
            };
            out.push((tok, line, col));
        }
    }
}

struct Parser<'v> {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    vars: &'v VarSet,
    end: (usize, usize),
}

impl<'v> Parser<'v> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|&(_, l, c)| (l, c))
            .unwrap_or(self.end)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        let (line, column) = self.here();
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _, _)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.checked_add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.checked_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := factor (('*'|'/') factor)*
    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.checked_mul(&self.factor()?)?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let rhs = self.factor()?;
                    let c = rhs
                        .constant_value()
                        .ok_or_else(|| self.err("division is only allowed by constants"))?;
                    if c.is_zero() {
                        return Err(self.err("division by zero"));
                    }
                    acc = acc.scale(&c.recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    // factor := ('-'|'+')* atom ('^' uint)?
    fn factor(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                return Ok(self.factor()?.neg());
            }
            Some(Tok::Plus) => {
                self.bump();
                return self.factor();
            }
            _ => {}
        }
        let mut base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            match self.bump() {
                Some(Tok::Num(n)) => {
                    let e = u32::try_from(n).map_err(|_| self.err("exponent too large"))?;
                    base = base.pow(e);
                }
                _ => return Err(self.err("expected integer exponent after `^`")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.bump() {
            Some(Tok::Num(n)) => Ok(MultiPoly::constant(self.vars, Scalar::from_integer(n))),
            Some(Tok::Ident(name)) => MultiPoly::variable(self.vars, &name).map_err(|_| {
                let (line, column) = self
                    .toks
                    .get(self.pos - 1)
                    .map(|&(_, l, c)| (l, c))
                    .unwrap_or(self.end);
                Error::Parse {
                    line,
                    column,
                    message: format!("unknown variable `{name}`"),
                }
            }),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(self.err("expected `)`")),
                }
            }
            Some(t) => Err(self.err(format!("unexpected token {t:?}"))),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// Parse `text` into a polynomial over `vars`.
pub fn parse_poly(text: &str, vars: &VarSet) -> Result<MultiPoly> {
    let lines = text.lines().count().max(1);
    let last_len = text.lines().last().map(|l| l.len()).unwrap_or(0);
    let toks = Lexer::new(text).tokens()?;
    let mut p = Parser {
        toks,
        pos: 0,
        vars,
        end: (lines, last_len + 1),
    };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(poly)
}
