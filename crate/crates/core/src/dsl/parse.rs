use crate::lex::{tokenize, Tok, Token};

use super::ast::{DrawOptions, Expr, Format, Script, Stmt, StmtKind, View};
use super::DslError;

const RESERVED: [&str; 6] = ["gen", "let", "draw", "unit", "lunitor", "runitor"];

pub fn parse(src: &str) -> Result<Script, DslError> {
    let tokens = tokenize(src).map_err(|e| DslError::Parse { line: e.line, col: e.col, msg: e.msg })?;
    let (line, col) = src.lines().enumerate().last().map_or((1, 1), |(i, l)| (i + 1, l.chars().count() + 1));
    let end = if src.ends_with('\n') { (line + 1, 1) } else { (line, col) };
    let mut p = Parser { tokens, i: 0, end };
    let mut stmts = Vec::new();
    loop {
        while p.eat(&Tok::Newline) || p.eat(&Tok::Semi) {}
        if p.peek().is_none() {
            break;
        }
        stmts.push(p.stmt()?);
        match p.peek().map(|t| &t.tok) {
            None | Some(Tok::Newline) | Some(Tok::Semi) => {}
            Some(other) => return Err(p.error(format!("expected end of statement, found {other}"))),
        }
    }
    Ok(Script { stmts })
}

struct Parser {
    tokens: Vec<Token>,
    i: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.i)
    }

    fn position(&self) -> (usize, usize) {
        self.peek().map_or(self.end, |t| (t.line, t.col))
    }

    fn error(&self, msg: String) -> DslError {
        let (line, col) = self.position();
        DslError::Parse { line, col, msg }
    }

    fn found(&self) -> String {
        self.peek().map_or("end of input".to_string(), |t| t.tok.to_string())
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek().is_some_and(|t| &t.tok == tok) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), DslError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected {tok}, found {}", self.found())))
        }
    }

    fn ident(&mut self) -> Result<String, DslError> {
        match self.peek().map(|t| &t.tok) {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.i += 1;
                Ok(s)
            }
            _ => Err(self.error(format!("expected a name, found {}", self.found()))),
        }
    }

    fn name(&mut self) -> Result<String, DslError> {
        let at = self.i;
        let s = self.ident()?;
        if RESERVED.contains(&s.as_str()) {
            self.i = at;
            return Err(self.error(format!("`{s}` is a reserved word")));
        }
        Ok(s)
    }

    fn stmt(&mut self) -> Result<Stmt, DslError> {
        let (line, col) = self.position();
        let keyword = self.ident()?;
        let kind = match keyword.as_str() {
            "gen" => {
                let name = self.name()?;
                let ty = if self.eat(&Tok::Colon) {
                    let input = self.expr()?;
                    self.expect(Tok::Arrow)?;
                    let output = self.expr()?;
                    Some((input, output))
                } else {
                    None
                };
                StmtKind::Gen { name, ty }
            }
            "let" => {
                let name = self.name()?;
                self.expect(Tok::Equals)?;
                StmtKind::Let { name, expr: self.expr()? }
            }
            "draw" => {
                let name = self.name()?;
                StmtKind::Draw { name, options: self.draw_options()? }
            }
            other => {
                self.i -= 1;
                return Err(self.error(format!("expected `gen`, `let` or `draw`, found `{other}`")));
            }
        };
        Ok(Stmt { kind, line, col })
    }

    fn draw_options(&mut self) -> Result<DrawOptions, DslError> {
        let mut options = DrawOptions::default();
        while let Some(Tok::Ident(_)) = self.peek().map(|t| &t.tok) {
            let at = self.i;
            let key = self.ident()?;
            self.expect(Tok::Equals)?;
            let value = match self.peek().map(|t| &t.tok) {
                Some(Tok::Ident(s)) | Some(Tok::Str(s)) => s.clone(),
                _ => return Err(self.error(format!("expected a value, found {}", self.found()))),
            };
            let bad = |p: &mut Parser, msg: String| {
                p.i = at;
                Err(p.error(msg))
            };
            match key.as_str() {
                "view" => {
                    options.view = Some(match value.as_str() {
                        "hasse" => View::Hasse,
                        "string" => View::String,
                        _ => return bad(self, format!("unknown view `{value}`")),
                    })
                }
                "format" => {
                    options.format = Some(match value.as_str() {
                        "tikz" => Format::Tikz,
                        "svg" => Format::Svg,
                        _ => return bad(self, format!("unknown format `{value}`")),
                    })
                }
                "bg" => options.bg = Some(value),
                _ => return bad(self, format!("unknown draw option `{key}`")),
            }
            self.i += 1;
        }
        Ok(options)
    }

    /// `diag := diag "*" NAT? atom | atom`, with a single index per chain.
    fn expr(&mut self) -> Result<Expr, DslError> {
        let mut acc = self.atom()?;
        let mut chain: Option<Option<usize>> = None;
        while self.peek().is_some_and(|t| t.tok == Tok::Star) {
            let star = self.position();
            self.i += 1;
            let k = match self.peek().map(|t| &t.tok) {
                Some(Tok::Nat(n)) => {
                    let n = *n;
                    self.i += 1;
                    Some(n)
                }
                _ => None,
            };
            if chain.is_some_and(|prev| prev != k) {
                return Err(DslError::Parse {
                    line: star.0,
                    col: star.1,
                    msg: "pasting indices differ along a chain; add parentheses".into(),
                });
            }
            chain = Some(k);
            let rhs = self.atom()?;
            acc = Expr::Paste(Box::new(acc), Box::new(rhs), k);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Expr, DslError> {
        match self.peek().map(|t| t.tok.clone()) {
            Some(Tok::LParen) => {
                self.i += 1;
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Some(Tok::Ident(s)) if matches!(s.as_str(), "unit" | "lunitor" | "runitor") => {
                self.i += 1;
                self.expect(Tok::LParen)?;
                let e = Box::new(self.expr()?);
                self.expect(Tok::RParen)?;
                Ok(match s.as_str() {
                    "unit" => Expr::Unit(e),
                    "lunitor" => Expr::Lunitor(e),
                    _ => Expr::Runitor(e),
                })
            }
            Some(Tok::Ident(_)) => Ok(Expr::Name(self.name()?)),
            _ => Err(self.error(format!("expected an expression, found {}", self.found()))),
        }
    }
}
