use std::fmt;

use crate::lex::{tokenize, Tok, Token};

use super::{Molecule, ShapeError};

/// A parsed shape expression.
///
/// ```text
/// shape  := paste ("=>" paste)?
/// paste  := atomic ("*" NAT? atomic)*
/// atomic := "point" | "arrow" | "globe" | "binary" | "cobinary"
///         | "atom(" shape "," shape ")" | "paste(" shape "," shape ("," NAT)? ")"
///         | "(" shape ")"
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShapeExpr {
    Named(String),
    Atom(Box<ShapeExpr>, Box<ShapeExpr>),
    Paste(Box<ShapeExpr>, Box<ShapeExpr>, Option<usize>),
}

const NAMES: [&str; 5] = ["point", "arrow", "globe", "binary", "cobinary"];

impl ShapeExpr {
    pub fn eval(&self) -> Result<Molecule, ShapeError> {
        match self {
            ShapeExpr::Named(name) => Ok(match name.as_str() {
                "point" => Molecule::point(),
                "arrow" => Molecule::arrow(),
                "globe" => Molecule::globe(),
                "binary" => Molecule::binary(),
                "cobinary" => Molecule::cobinary(),
                other => unreachable!("unknown shape {other} survived parsing"),
            }),
            ShapeExpr::Atom(u, v) => Molecule::atom(&u.eval()?, &v.eval()?),
            ShapeExpr::Paste(u, v, k) => {
                let (u, v) = (u.eval()?, v.eval()?);
                match k {
                    Some(k) => Molecule::paste(&u, &v, *k),
                    None => Molecule::paste_default(&u, &v),
                }
            }
        }
    }
}

impl fmt::Display for ShapeExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ShapeExpr::Named(n) => f.write_str(n),
            ShapeExpr::Atom(u, v) => write!(f, "atom({u}, {v})"),
            ShapeExpr::Paste(u, v, Some(k)) => write!(f, "paste({u}, {v}, {k})"),
            ShapeExpr::Paste(u, v, None) => write!(f, "paste({u}, {v})"),
        }
    }
}

impl std::str::FromStr for Molecule {
    type Err = ShapeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_shape(s)?.eval()
    }
}

pub fn parse_shape(src: &str) -> Result<ShapeExpr, ShapeError> {
    let tokens = tokenize(src).map_err(|e| ShapeError::Parse { col: e.col, msg: e.msg })?;
    let tokens: Vec<Token> = tokens.into_iter().filter(|t| t.tok != Tok::Newline).collect();
    let mut p = Parser { tokens, i: 0, end: src.chars().count() + 1 };
    let expr = p.shape()?;
    if let Some(t) = p.peek() {
        return Err(p.error_at(t.col, format!("unexpected {}", t.tok)));
    }
    Ok(expr)
}

struct Parser {
    tokens: Vec<Token>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.i)
    }

    fn error_at(&self, col: usize, msg: String) -> ShapeError {
        ShapeError::Parse { col, msg }
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end, |t| t.col)
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ShapeError> {
        match self.peek() {
            Some(t) if t.tok == tok => {
                self.i += 1;
                Ok(())
            }
            Some(t) => Err(self.error_at(t.col, format!("expected {tok}, found {}", t.tok))),
            None => Err(self.error_at(self.end, format!("expected {tok}, found end of input"))),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().is_some_and(|t| &t.tok == tok) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn shape(&mut self) -> Result<ShapeExpr, ShapeError> {
        let u = self.paste()?;
        if self.eat(&Tok::Arrow) {
            let v = self.paste()?;
            return Ok(ShapeExpr::Atom(Box::new(u), Box::new(v)));
        }
        Ok(u)
    }

    fn paste(&mut self) -> Result<ShapeExpr, ShapeError> {
        let mut acc = self.atomic()?;
        let mut chain_k: Option<Option<usize>> = None;
        while self.peek().is_some_and(|t| t.tok == Tok::Star) {
            let col = self.here();
            self.i += 1;
            let k = match self.peek().map(|t| &t.tok) {
                Some(Tok::Nat(n)) => {
                    let n = *n;
                    self.i += 1;
                    Some(n)
                }
                _ => None,
            };
            if chain_k.is_some_and(|prev| prev != k) {
                return Err(self.error_at(col, "mixed pasting dimensions need parentheses".into()));
            }
            chain_k = Some(k);
            let rhs = self.atomic()?;
            acc = ShapeExpr::Paste(Box::new(acc), Box::new(rhs), k);
        }
        Ok(acc)
    }

    fn atomic(&mut self) -> Result<ShapeExpr, ShapeError> {
        let Some(t) = self.peek().cloned() else {
            return Err(self.error_at(self.end, "expected a shape, found end of input".into()));
        };
        self.i += 1;
        match t.tok {
            Tok::LParen => {
                let e = self.shape()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::Ident(name) if name == "atom" => {
                self.expect(Tok::LParen)?;
                let u = self.shape()?;
                self.expect(Tok::Comma)?;
                let v = self.shape()?;
                self.expect(Tok::RParen)?;
                Ok(ShapeExpr::Atom(Box::new(u), Box::new(v)))
            }
            Tok::Ident(name) if name == "paste" => {
                self.expect(Tok::LParen)?;
                let u = self.shape()?;
                self.expect(Tok::Comma)?;
                let v = self.shape()?;
                let mut k = None;
                if self.eat(&Tok::Comma) {
                    match self.peek().map(|t| t.tok.clone()) {
                        Some(Tok::Nat(n)) => {
                            self.i += 1;
                            k = Some(n);
                        }
                        _ => return Err(self.error_at(self.here(), "expected a pasting dimension".into())),
                    }
                }
                self.expect(Tok::RParen)?;
                Ok(ShapeExpr::Paste(Box::new(u), Box::new(v), k))
            }
            Tok::Ident(name) if NAMES.contains(&name.as_str()) => Ok(ShapeExpr::Named(name)),
            Tok::Ident(name) => Err(self.error_at(t.col, format!("unknown shape `{name}`"))),
            other => Err(self.error_at(t.col, format!("expected a shape, found {other}"))),
        }
    }
}
