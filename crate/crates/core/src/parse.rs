//! Recursive-descent parser for the polynomial text grammar:
//!
//! ```text
//! expression := ('+'|'-')? term (('+'|'-') term)*
//! term       := factor (('*'|'/') factor)*
//! factor     := base ('^' nonneg-int)?
//! base       := integer | identifier | '(' expression ')'
//! ```
//!
//! Division is only allowed by a nonzero constant, so `3/2*x` is accepted in
//! rational mode (and in `GF(p)` whenever 2 is invertible).

use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{PolyRing, Polynomial};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push((Tok::Int(s.parse().expect("digits")), start));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), start));
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    pos: start,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push((tok, start));
        i += 1;
    }
    out.push((Tok::End, chars.len()));
    Ok(out)
}

struct Parser<'a, F: Field> {
    toks: Vec<(Tok, usize)>,
    at: usize,
    ring: &'a Arc<PolyRing<F>>,
}

impl<'a, F: Field> Parser<'a, F> {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expression(&mut self) -> Result<Polynomial<F>> {
        let negate = match self.peek() {
            Tok::Minus => {
                self.bump();
                true
            }
            Tok::Plus => {
                self.bump();
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial<F>> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    acc = &acc * &self.factor()?;
                }
                Tok::Slash => {
                    self.bump();
                    let pos = self.pos();
                    let d = self.factor()?;
                    let field = self.ring.field();
                    let c = if d.is_zero() {
                        field.zero()
                    } else {
                        match d.as_constant() {
                            Some(c) => c.clone(),
                            None => {
                                return Err(Error::Syntax {
                                    pos,
                                    msg: "division by a non-constant".into(),
                                })
                            }
                        }
                    };
                    let inv = field.inv(&c).ok_or_else(|| {
                        Error::NotRepresentable(format!(
                            "division by zero at position {pos} in {}",
                            field.spec()
                        ))
                    })?;
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial<F>> {
        let base = self.base()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let pos = self.pos();
            match self.peek().clone() {
                Tok::Int(e) => {
                    self.bump();
                    let e: u32 = e.try_into().map_err(|_| Error::Syntax {
                        pos,
                        msg: "exponent too large".into(),
                    })?;
                    Ok(base.pow(e))
                }
                _ => self.err("expected a non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn base(&mut self) -> Result<Polynomial<F>> {
        let pos = self.pos();
        if *self.peek() == Tok::End {
            return self.err("unexpected end of input");
        }
        match self.bump() {
            Tok::Int(v) => Ok(Polynomial::constant(self.ring, self.ring.field().from_bigint(&v))),
            Tok::Ident(name) => match self.ring.var_index(&name) {
                Some(i) => Ok(Polynomial::var(self.ring, i)),
                None => Err(Error::UnknownVariable { name, pos }),
            },
            Tok::LParen => {
                let e = self.expression()?;
                if *self.peek() != Tok::RParen {
                    return self.err("expected `)`");
                }
                self.bump();
                Ok(e)
            }
            t => {
                self.at -= 1;
                self.err(format!("unexpected token {t:?}"))
            }
        }
    }
}

/// Parses `text` into a polynomial of `ring`.
pub fn parse_polynomial<F: Field>(text: &str, ring: &Arc<PolyRing<F>>) -> Result<Polynomial<F>> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, at: 0, ring };
    let poly = p.expression()?;
    if *p.peek() != Tok::End {
        return p.err("trailing input");
    }
    Ok(poly)
}
