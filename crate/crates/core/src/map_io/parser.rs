//! Lexer and recursive-descent parser for the map text format.
//!
//! ```text
//! map        := header assignment+
//! header     := "vars:" ident+ NEWLINE
//! assignment := ident "=" expr NEWLINE
//! expr       := ["-"] term (("+"|"-") term)*
//! term       := factor ("*" factor)*
//! factor     := base ("^" natural)?
//! base       := rational | ident | "(" expr ")"
//! rational   := natural ("/" natural)?
//! ```
//!
//! `#` starts a comment running to end of line. Blank lines are allowed
//! anywhere; the final assignment may end at end of input.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Ident(String),
    Natural(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    Equals,
    Colon,
    Newline,
    Eof,
}

#[derive(Debug, Clone)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

fn err(line: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, col, message: message.into() }
}

pub(crate) fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let start = (line, col);
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '^' => Some(Tok::Caret),
            '/' => Some(Tok::Slash),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '=' => Some(Tok::Equals),
            ':' => Some(Tok::Colon),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Token { tok, line, col });
            i += 1;
            col += 1;
            continue;
        }
        match c {
            '\n' => {
                out.push(Token { tok: Tok::Newline, line, col });
                i += 1;
                line += 1;
                col = 1;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            c if c.is_ascii_digit() => {
                let mut s = String::new();
                while i < chars.len() && chars[i].is_ascii_digit() {
                    s.push(chars[i]);
                    i += 1;
                    col += 1;
                }
                out.push(Token { tok: Tok::Natural(s), line: start.0, col: start.1 });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::new();
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    s.push(chars[i]);
                    i += 1;
                    col += 1;
                }
                out.push(Token { tok: Tok::Ident(s), line: start.0, col: start.1 });
            }
            other => return Err(err(line, col, format!("unexpected character {other:?}"))),
        }
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

/// Expression tree of one right-hand side. Variables are resolved to
/// indices into the header's variable list.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(Rational),
    Var(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    pub target: String,
    pub expr: Expr,
    pub line: usize,
}

/// A parsed map file before expansion into canonical polynomials.
#[derive(Debug, Clone, PartialEq)]
pub struct MapDocument {
    pub variable_names: Vec<String>,
    pub assignments: Vec<Assignment>,
}

pub(crate) struct Parser<'a> {
    toks: Vec<Token>,
    pos: usize,
    names: &'a [String],
}

impl<'a> Parser<'a> {
    pub(crate) fn new(toks: Vec<Token>, names: &'a [String]) -> Self {
        Parser { toks, pos: 0, names }
    }

    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn here(&self, message: impl Into<String>) -> Error {
        let t = self.peek();
        err(t.line, t.col, message)
    }

    fn describe(tok: &Tok) -> String {
        match tok {
            Tok::Ident(s) => format!("identifier {s:?}"),
            Tok::Natural(s) => format!("number {s}"),
            Tok::Newline => "end of line".into(),
            Tok::Eof => "end of input".into(),
            other => format!("{other:?}"),
        }
    }

    pub(crate) fn skip_newlines(&mut self) {
        while self.peek().tok == Tok::Newline {
            self.bump();
        }
    }

    pub(crate) fn expr(&mut self) -> Result<Expr> {
        let negate = if self.peek().tok == Tok::Minus {
            self.bump();
            true
        } else {
            false
        };
        let mut lhs = self.term()?;
        if negate {
            lhs = Expr::Neg(Box::new(lhs));
        }
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        loop {
            match &self.peek().tok {
                Tok::Star => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
                }
                Tok::Ident(_) | Tok::Natural(_) | Tok::LParen => {
                    return Err(self.here("implicit multiplication is not allowed; use '*'"));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        match t.tok {
            Tok::Natural(s) => {
                let e: u32 = s
                    .parse()
                    .map_err(|_| err(t.line, t.col, format!("exponent {s} is too large")))?;
                if self.peek().tok == Tok::Caret {
                    return Err(self.here("chained exponents need parentheses"));
                }
                Ok(Expr::Pow(Box::new(base), e))
            }
            other => Err(err(
                t.line,
                t.col,
                format!(
                    "exponent must be a non-negative integer literal, found {}",
                    Self::describe(&other)
                ),
            )),
        }
    }

    fn base(&mut self) -> Result<Expr> {
        let t = self.bump();
        match t.tok {
            Tok::Natural(n) => {
                let num: BigInt = n.parse().expect("digits");
                if self.peek().tok != Tok::Slash {
                    return Ok(Expr::Const(Rational::from_integer(num)));
                }
                self.bump();
                let d = self.bump();
                match d.tok {
                    Tok::Natural(den) => {
                        let den: BigInt = den.parse().expect("digits");
                        Rational::new(num, den)
                            .map(Expr::Const)
                            .map_err(|_| err(d.line, d.col, "zero denominator"))
                    }
                    other => Err(err(
                        d.line,
                        d.col,
                        format!("'/' must be followed by an integer literal, found {}", Self::describe(&other)),
                    )),
                }
            }
            Tok::Ident(name) => match self.names.iter().position(|v| *v == name) {
                Some(i) => {
                    if self.peek().tok == Tok::Slash {
                        return Err(self.here("'/' is only allowed between integer literals"));
                    }
                    Ok(Expr::Var(i))
                }
                None => Err(err(t.line, t.col, format!("unknown identifier {name:?}"))),
            },
            Tok::LParen => {
                let inner = self.expr()?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(err(close.line, close.col, format!("expected ')', found {}", Self::describe(&close.tok))));
                }
                if self.peek().tok == Tok::Slash {
                    return Err(self.here("'/' is only allowed between integer literals"));
                }
                Ok(inner)
            }
            Tok::Minus => Err(err(t.line, t.col, "unary minus is only allowed at the start of an expression")),
            other => Err(err(t.line, t.col, format!("expected a number, identifier or '(', found {}", Self::describe(&other)))),
        }
    }

    /// Expects the end of an assignment: a newline or end of input.
    pub(crate) fn end_of_line(&mut self) -> Result<()> {
        match &self.peek().tok {
            Tok::Newline => {
                self.bump();
                Ok(())
            }
            Tok::Eof => Ok(()),
            other => {
                let msg = format!("expected end of line, found {}", Self::describe(other));
                Err(self.here(msg))
            }
        }
    }

    pub(crate) fn at_eof(&self) -> bool {
        self.peek().tok == Tok::Eof
    }
}

fn parse_header(toks: &[Token]) -> Result<(Vec<String>, usize)> {
    let mut i = 0;
    while toks[i].tok == Tok::Newline {
        i += 1;
    }
    let first = &toks[i];
    let is_vars = matches!(&first.tok, Tok::Ident(s) if s == "vars");
    if !is_vars || toks[i + 1].tok != Tok::Colon {
        return Err(err(first.line, first.col, "expected header \"vars:\""));
    }
    i += 2;
    let mut names: Vec<String> = Vec::new();
    while let Tok::Ident(s) = &toks[i].tok {
        if names.contains(s) {
            return Err(err(toks[i].line, toks[i].col, format!("duplicate variable {s:?}")));
        }
        names.push(s.clone());
        i += 1;
    }
    if names.is_empty() {
        return Err(err(toks[i].line, toks[i].col, "header declares no variables"));
    }
    match toks[i].tok {
        Tok::Newline => Ok((names, i + 1)),
        _ => Err(err(toks[i].line, toks[i].col, "expected an identifier or end of line in header")),
    }
}

pub fn parse_document(text: &str) -> Result<MapDocument> {
    let toks = lex(text)?;
    let (names, start) = parse_header(&toks)?;
    let mut parser = Parser::new(toks, &names);
    parser.pos = start;
    let mut assignments: Vec<Assignment> = Vec::new();
    loop {
        parser.skip_newlines();
        if parser.at_eof() {
            break;
        }
        let t = parser.bump();
        let Tok::Ident(target) = t.tok else {
            return Err(err(t.line, t.col, "expected an assignment target"));
        };
        if assignments.iter().any(|a| a.target == target) {
            return Err(err(t.line, t.col, format!("duplicate assignment to {target:?}")));
        }
        if parser.peek().tok != Tok::Equals {
            return Err(parser.here("expected '='"));
        }
        parser.bump();
        let expr = parser.expr()?;
        parser.end_of_line()?;
        assignments.push(Assignment { target, expr, line: t.line });
    }
    if assignments.is_empty() {
        let last = parser.peek();
        return Err(err(last.line, last.col, "map has no assignments"));
    }
    Ok(MapDocument { variable_names: names, assignments })
}
