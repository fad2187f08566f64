//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! poly     := ['+'|'-'] term (('+'|'-') term)*
//! term     := factor ('*' factor)*
//! factor   := atom ['^' nat]
//! atom     := rational | 'i' | var | '(' poly ')'
//! rational := int ['/' nat]
//! var      := ident | '~' ident
//! ```
//!
//! Whitespace is insignificant. `~z` names the conjugate partner of `z`.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::coeff::GaussRat;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::vars::VarTable;

#[derive(Clone, Debug, PartialEq)]
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
}

struct Lexed {
    tok: Tok,
    pos: usize,
}

struct Parser<'a> {
    text: &'a str,
    toks: Vec<Lexed>,
    at: usize,
    table: &'a Arc<VarTable>,
    origin: (usize, usize),
}

impl<'a> Parser<'a> {
    fn error_at(&self, pos: usize, message: impl Into<String>) -> Error {
        let before = &self.text[..pos.min(self.text.len())];
        let line_off = before.matches('\n').count();
        let col = match before.rfind('\n') {
            Some(nl) => before[nl + 1..].chars().count() + 1,
            None => before.chars().count() + self.origin.1,
        };
        Error::Syntax {
            line: self.origin.0 + line_off,
            column: col,
            message: message.into(),
        }
    }

    fn lex(&mut self) -> Result<()> {
        let bytes = self.text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            let start = i;
            let tok = match c {
                c if c.is_whitespace() => {
                    i += 1;
                    continue;
                }
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '0'..='9' => {
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let n: BigInt = self.text[start..i].parse().expect("digits");
                    self.toks.push(Lexed {
                        tok: Tok::Int(n),
                        pos: start,
                    });
                    continue;
                }
                c if c == '~' || c == '_' || c.is_ascii_alphabetic() => {
                    i += 1;
                    if c == '~'
                        && (i >= bytes.len()
                            || !(bytes[i].is_ascii_alphabetic() || bytes[i] == b'_'))
                    {
                        return Err(self.error_at(start, "expected a variable name after `~`"));
                    }
                    while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                    {
                        i += 1;
                    }
                    self.toks.push(Lexed {
                        tok: Tok::Ident(self.text[start..i].to_string()),
                        pos: start,
                    });
                    continue;
                }
                other => {
                    return Err(self.error_at(start, format!("unexpected character `{other}`")))
                }
            };
            i += 1;
            self.toks.push(Lexed { tok, pos: start });
        }
        Ok(())
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|l| &l.tok)
    }

    fn pos(&self) -> usize {
        self.toks
            .get(self.at)
            .map(|l| l.pos)
            .unwrap_or(self.text.len())
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn poly(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.table);
        let mut negate = if self.eat(&Tok::Minus) {
            true
        } else {
            self.eat(&Tok::Plus);
            false
        };
        loop {
            let t = self.term()?;
            acc = if negate { &acc - &t } else { &acc + &t };
            if self.eat(&Tok::Plus) {
                negate = false;
            } else if self.eat(&Tok::Minus) {
                negate = true;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        while self.eat(&Tok::Star) {
            let pos = self.pos();
            let f = self.factor()?;
            acc = acc
                .checked_mul(&f)
                .map_err(|e| self.error_at(pos, e.to_string()))?;
        }
        Ok(acc)
    }

    fn nat(&mut self) -> Result<BigInt> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.at += 1;
                Ok(n)
            }
            _ => Err(self.error_at(self.pos(), "expected a natural number")),
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            let pos = self.pos();
            let n = self.nat()?;
            let e: u32 = n
                .try_into()
                .map_err(|_| self.error_at(pos, "exponent too large"))?;
            return base
                .pow(e)
                .map_err(|err| self.error_at(pos, err.to_string()));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(num)) => {
                self.at += 1;
                let mut q = BigRational::from_integer(num);
                if self.eat(&Tok::Slash) {
                    let dpos = self.pos();
                    let den = self.nat()?;
                    if den.is_zero() {
                        return Err(self.error_at(dpos, "zero denominator"));
                    }
                    q /= BigRational::from_integer(den);
                }
                Ok(Poly::constant(self.table, GaussRat::from(q)))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                if name == "i" {
                    return Ok(Poly::constant(self.table, GaussRat::i()));
                }
                match self.table.index_of(&name) {
                    Some(idx) => Ok(Poly::var(self.table, idx)),
                    None => Err(self.error_at(pos, format!("undeclared variable `{name}`"))),
                }
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.poly()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.error_at(self.pos(), "expected `)`"));
                }
                Ok(inner)
            }
            Some(_) => Err(self.error_at(pos, "expected a number, `i`, a variable or `(`")),
            None => Err(self.error_at(pos, "unexpected end of expression")),
        }
    }
}

/// Parses `text` as a polynomial over `table`.
pub fn parse_poly(text: &str, table: &Arc<VarTable>) -> Result<Poly> {
    parse_poly_at(text, table, (1, 1))
}

/// Like [`parse_poly`], reporting error positions relative to `origin`
/// (line, column) of `text` inside a larger document.
pub fn parse_poly_at(text: &str, table: &Arc<VarTable>, origin: (usize, usize)) -> Result<Poly> {
    let mut p = Parser {
        text,
        toks: Vec::new(),
        at: 0,
        table,
        origin,
    };
    p.lex()?;
    if p.toks.is_empty() {
        return Err(p.error_at(0, "empty expression"));
    }
    let poly = p.poly()?;
    if p.at < p.toks.len() {
        return Err(p.error_at(p.pos(), "unexpected trailing input"));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t() -> Arc<VarTable> {
        VarTable::paired(&["z", "w"]).unwrap()
    }

    #[test]
    fn precedence_and_parentheses() {
        let t = t();
        let a = parse_poly("2*z^2 + 3*(w - z)^2", &t).unwrap();
        let b = parse_poly("5*z^2 - 6*z*w + 3*w^2", &t).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rationals_and_imaginary_unit() {
        let t = t();
        let a = parse_poly("3/2*i*~z", &t).unwrap();
        let (_, c) = a.terms().next().unwrap();
        assert_eq!(c, &GaussRat::from_parts((0, 1), (3, 2)));
    }

    #[test]
    fn errors_carry_locations() {
        let t = t();
        match parse_poly("z + q", &t) {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 5)),
            other => panic!("{other:?}"),
        }
        match parse_poly_at("z +", &t, (4, 12)) {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (4, 15)),
            other => panic!("{other:?}"),
        }
        assert!(parse_poly("1/0", &t).is_err());
        assert!(parse_poly("z w", &t).is_err());
        assert!(parse_poly("(z", &t).is_err());
        assert!(parse_poly("~", &t).is_err());
        assert!(parse_poly("", &t).is_err());
    }
}
