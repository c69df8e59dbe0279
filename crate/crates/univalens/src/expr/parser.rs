//! Recursive-descent parser for the expression grammar:
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := "-" factor | base ("^" factor)?
//! base   := number | "z" | "i" | "pi" | "(" expr ")" | ident "(" expr ")"
//! ident  := exp | log | sqrt | sin | cos
//! ```
//!
//! `^` binds tightest and is right associative; unary minus sits between `^`
//! and `*`/`/`, so `-z^2` parses as `-(z^2)`. Exponents must reduce to a
//! constant. Whitespace is insignificant. Error offsets are 1-based bytes.

use num_complex::Complex64;

use super::ast::{self, Builtin, Expr};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Z,
    I,
    Pi,
    Fun(Builtin),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(v) => format!("number `{}`", v),
            Tok::Z => "`z`".into(),
            Tok::I => "`i`".into(),
            Tok::Pi => "`pi`".into(),
            Tok::Fun(b) => format!("`{}`", b.name()),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Spanned {
    tok: Tok,
    offset: usize, // 0-based byte offset of the token start
}

fn lex(src: &str) -> Result<Vec<Spanned>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'+' => {
                i += 1;
                Tok::Plus
            }
            b'-' => {
                i += 1;
                Tok::Minus
            }
            b'*' => {
                i += 1;
                Tok::Star
            }
            b'/' => {
                i += 1;
                Tok::Slash
            }
            b'^' => {
                i += 1;
                Tok::Caret
            }
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                if i == start || (i == start + 1 && bytes[start] == b'.') {
                    return Err(Error::Syntax {
                        offset: start + 1,
                        expected: "a digit",
                        found: "`.`".into(),
                    });
                }
                // exponent part only if it is actually well formed
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let text = &src[start..i];
                let v: f64 = text.parse().map_err(|_| Error::Syntax {
                    offset: start + 1,
                    expected: "a number",
                    found: format!("`{}`", text),
                })?;
                Tok::Num(v)
            }
            b'a'..=b'z' | b'A'..=b'Z' => {
                while i < bytes.len() && bytes[i].is_ascii_alphabetic() {
                    i += 1;
                }
                let name = &src[start..i];
                match name {
                    "z" => Tok::Z,
                    "i" => Tok::I,
                    "pi" => Tok::Pi,
                    _ => match Builtin::from_name(name) {
                        Some(b) => Tok::Fun(b),
                        None => {
                            return Err(Error::UnknownIdentifier {
                                name: name.to_string(),
                                offset: start + 1,
                            })
                        }
                    },
                }
            }
            other => {
                return Err(Error::Syntax {
                    offset: start + 1,
                    expected: "a number, `z`, `i`, `pi`, `(`, a function name, or an operator",
                    found: format!("`{}`", other as char),
                })
            }
        };
        out.push(Spanned { tok, offset: start });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        offset: bytes.len(),
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].offset + 1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, expected: &'static str) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(Error::Syntax {
                offset: self.offset(),
                expected,
                found: self.peek().describe(),
            })
        }
    }

    fn parse_expr(&mut self) -> Result<Expr> {
        let mut node = self.parse_term()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    node = ast::add(node, self.parse_term()?);
                }
                Tok::Minus => {
                    self.bump();
                    node = ast::sub(node, self.parse_term()?);
                }
                _ => return Ok(node),
            }
        }
    }

    fn parse_term(&mut self) -> Result<Expr> {
        let mut node = self.parse_factor()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    node = ast::mul(node, self.parse_factor()?);
                }
                Tok::Slash => {
                    self.bump();
                    node = ast::div(node, self.parse_factor()?);
                }
                _ => return Ok(node),
            }
        }
    }

    fn parse_factor(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(ast::neg(self.parse_factor()?));
        }
        let base = self.parse_base()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let exp_offset = self.offset();
            let e = self.parse_factor()?;
            let c = ast::as_const(&e).ok_or(Error::NonConstantExponent { offset: exp_offset })?;
            return Ok(ast::pow(base, c));
        }
        Ok(base)
    }

    fn parse_base(&mut self) -> Result<Expr> {
        let offset = self.offset();
        match self.bump() {
            Tok::Num(v) => Ok(Expr::Const(Complex64::new(v, 0.0))),
            Tok::Z => Ok(Expr::Var),
            Tok::I => Ok(Expr::Const(Complex64::new(0.0, 1.0))),
            Tok::Pi => Ok(Expr::Const(Complex64::new(std::f64::consts::PI, 0.0))),
            Tok::LParen => {
                let e = self.parse_expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Tok::Fun(b) => {
                self.expect(Tok::LParen, "`(` after function name")?;
                let arg = self.parse_expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(ast::call(b, arg))
            }
            other => Err(Error::Syntax {
                offset,
                expected: "a number, `z`, `i`, `pi`, `(`, a function name, or `-`",
                found: other.describe(),
            }),
        }
    }
}

pub fn parse_source(source: &str) -> Result<Expr> {
    let toks = lex(source)?;
    let mut p = Parser { toks, pos: 0 };
    let e = p.parse_expr()?;
    if *p.peek() != Tok::Eof {
        return Err(Error::Syntax {
            offset: p.offset(),
            expected: "an operator or end of input",
            found: p.peek().describe(),
        });
    }
    Ok(e)
}
