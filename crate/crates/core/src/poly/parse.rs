//! Infix polynomial grammar.
//!
//! ```text
//! list   := expr (',' expr)*
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := '-' factor | atom ['^' integer]
//! atom   := integer ['/' integer] | name | '(' expr ')'
//! ```
//!
//! Names are matched against the ring; an identifier that is not a name is
//! split greedily into the longest known prefixes, so `zw^2` reads as
//! `z*w^2` in a ring containing `z` and `w`.

use num_bigint::BigInt;
use num_traits::One;

use super::ring::Ring;
use super::{Poly, Term};
use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq)]
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
    Comma,
    End,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

pub(crate) struct PolyParser<'r> {
    ring: &'r Ring,
    toks: Vec<Spanned>,
    pos: usize,
    lex_error: Option<Error>,
}

fn lex(text: &str, line0: usize, col0: usize) -> std::result::Result<Vec<Spanned>, Error> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (line0, col0);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l, cl) = (line, col);
        let advance = |i: &mut usize, col: &mut usize| {
            *i += 1;
            *col += 1;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                advance(&mut i, &mut col);
                continue;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                    col += 1;
                }
                let s: String = chars[start..i].iter().collect();
                out.push(Spanned {
                    tok: Tok::Num(s.parse().expect("digits")),
                    line: l,
                    col: cl,
                });
                continue;
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                    col += 1;
                }
                out.push(Spanned {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    line: l,
                    col: cl,
                });
                continue;
            }
            _ => {}
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            other => {
                return Err(Error::Parse {
                    line: l,
                    column: cl,
                    message: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push(Spanned {
            tok,
            line: l,
            col: cl,
        });
        advance(&mut i, &mut col);
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        col,
    });
    Ok(out)
}

impl<'r> PolyParser<'r> {
    /// `line0`/`col0` give the position of the first character of `text`
    /// in the enclosing document, so errors are reported in its coordinates.
    pub(crate) fn new(ring: &'r Ring, text: &str, line0: usize, col0: usize) -> Self {
        match lex(text, line0, col0) {
            Ok(toks) => PolyParser {
                ring,
                toks,
                pos: 0,
                lex_error: None,
            },
            Err(e) => PolyParser {
                ring,
                toks: vec![Spanned {
                    tok: Tok::End,
                    line: line0,
                    col: col0,
                }],
                pos: 0,
                lex_error: Some(e),
            },
        }
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        let s = &self.toks[self.pos];
        Err(Error::Parse {
            line: s.line,
            column: s.col,
            message: message.into(),
        })
    }

    pub(crate) fn parse_single<F: Field>(mut self) -> Result<Poly<F>> {
        if let Some(e) = self.lex_error.take() {
            return Err(e);
        }
        let p = self.expr()?;
        if *self.peek() != Tok::End {
            return self.error("unexpected trailing input");
        }
        Ok(p)
    }

    pub(crate) fn parse_list<F: Field>(mut self) -> Result<Vec<Poly<F>>> {
        if let Some(e) = self.lex_error.take() {
            return Err(e);
        }
        let mut out = Vec::new();
        if *self.peek() == Tok::End {
            return Ok(out);
        }
        loop {
            out.push(self.expr()?);
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::End => return Ok(out),
                _ => return self.error("expected `,` or end of list"),
            }
        }
    }

    fn expr<F: Field>(&mut self) -> Result<Poly<F>> {
        let n = self.ring.arity();
        let mut acc = Poly::zero(n);
        let mut sign = match self.peek() {
            Tok::Plus => {
                self.bump();
                false
            }
            Tok::Minus => {
                self.bump();
                true
            }
            _ => false,
        };
        loop {
            let t = self.term()?;
            acc = if sign { &acc - &t } else { &acc + &t };
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    sign = false;
                }
                Tok::Minus => {
                    self.bump();
                    sign = true;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Tok::Num(_) | Tok::Ident(_) | Tok::LParen)
    }

    fn term<F: Field>(&mut self) -> Result<Poly<F>> {
        let mut acc = self.factor()?;
        loop {
            if *self.peek() == Tok::Star {
                self.bump();
                let f = self.factor()?;
                acc = &acc * &f;
            } else if self.starts_factor() {
                let f = self.factor()?;
                acc = &acc * &f;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor<F: Field>(&mut self) -> Result<Poly<F>> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(-self.factor::<F>()?);
        }
        // In a juxtaposed name like `zw^2` the exponent binds to `w` only.
        let (prefix, base) = match self.peek().clone() {
            Tok::Ident(name) => {
                let mut parts = self.resolve_name(&name)?;
                let last = parts.pop().expect("nonempty split");
                let n = self.ring.arity();
                let mut t = Term::one(n);
                for i in parts {
                    t = t.mul_var(i);
                }
                (Some(Poly::monomial(t, F::one())), Poly::var(n, last))
            }
            _ => (None, self.atom()?),
        };
        let powered = self.exponent(base)?;
        Ok(match prefix {
            Some(p) => &p * &powered,
            None => powered,
        })
    }

    fn exponent<F: Field>(&mut self, base: Poly<F>) -> Result<Poly<F>> {
        if *self.peek() == Tok::Caret {
            self.bump();
            match self.peek().clone() {
                Tok::Num(e) => {
                    let e: u32 = match u32::try_from(&e) {
                        Ok(e) => e,
                        Err(_) => return self.error("exponent too large"),
                    };
                    self.bump();
                    Ok(base.pow(e))
                }
                _ => self.error("expected a non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom<F: Field>(&mut self) -> Result<Poly<F>> {
        let n = self.ring.arity();
        match self.peek().clone() {
            Tok::Num(num) => {
                self.bump();
                let mut den = BigInt::one();
                if *self.peek() == Tok::Slash {
                    self.bump();
                    match self.peek().clone() {
                        Tok::Num(d) => {
                            self.bump();
                            den = d;
                        }
                        _ => return self.error("expected an integer denominator"),
                    }
                }
                match F::from_ratio(&num, &den) {
                    Some(c) => Ok(Poly::constant(n, c)),
                    None => self.error("zero denominator"),
                }
            }
            Tok::LParen => {
                self.bump();
                let p = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return self.error("expected `)`");
                }
                self.bump();
                Ok(p)
            }
            Tok::End => self.error("unexpected end of input"),
            other => self.error(format!("unexpected token {other:?}")),
        }
    }

    /// Resolves the identifier under the cursor and consumes it.
    fn resolve_name(&mut self, name: &str) -> Result<Vec<usize>> {
        match self.split_name(name) {
            Some(p) => {
                self.bump();
                Ok(p)
            }
            None => self.error(format!("unknown indeterminate `{name}`")),
        }
    }

    /// Splits an identifier into ring names, longest prefix first.
    fn split_name(&self, name: &str) -> Option<Vec<usize>> {
        if let Some(i) = self.ring.index_of(name) {
            return Some(vec![i]);
        }
        let mut out = Vec::new();
        let mut rest = name;
        while !rest.is_empty() {
            let (len, idx) = (1..=rest.len())
                .rev()
                .filter(|&l| rest.is_char_boundary(l))
                .find_map(|l| self.ring.index_of(&rest[..l]).map(|i| (l, i)))?;
            out.push(idx);
            rest = &rest[len..];
        }
        Some(out)
    }
}
