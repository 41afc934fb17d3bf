//! Text form of expressions.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := "-" factor | power
//! power  := atom ("^" signed-number)?
//! atom   := number | "i" | "z" | "(" expr ")" | ("exp" | "log") "(" expr ")"
//! ```
//!
//! Numbers are decimal literals with an optional exponent part and an
//! optional `i` suffix. A `^` exponent must be a literal: integer text builds
//! an integer power, anything with a decimal point or exponent builds a real
//! power. All positions in errors are 1-based columns.

use num_complex::Complex64;

use crate::error::ParseError;
use crate::expr::{self, Expr};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num { value: f64, imag: bool, integral: bool },
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    pos: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let pos = i + 1;
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' => {
                out.push(Spanned { tok: Tok::Plus, pos });
                i += 1;
            }
            '-' => {
                out.push(Spanned { tok: Tok::Minus, pos });
                i += 1;
            }
            '*' => {
                out.push(Spanned { tok: Tok::Star, pos });
                i += 1;
            }
            '/' => {
                out.push(Spanned { tok: Tok::Slash, pos });
                i += 1;
            }
            '^' => {
                out.push(Spanned { tok: Tok::Caret, pos });
                i += 1;
            }
            '(' => {
                out.push(Spanned { tok: Tok::LParen, pos });
                i += 1;
            }
            ')' => {
                out.push(Spanned { tok: Tok::RParen, pos });
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let mut integral = true;
                if i < bytes.len() && bytes[i] == b'.' {
                    integral = false;
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                // Exponent part only when 'e'/'E' is followed by a digit or a
                // signed digit; otherwise the letter starts an identifier.
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        integral = false;
                        i = j;
                        while i < bytes.len() && bytes[i].is_ascii_digit() {
                            i += 1;
                        }
                    }
                }
                let text = &src[start..i];
                let value: f64 = text.parse().map_err(|_| ParseError::Syntax {
                    position: pos,
                    expected: "a numeric literal".into(),
                })?;
                let mut imag = false;
                if i < bytes.len() && bytes[i] == b'i' {
                    imag = true;
                    i += 1;
                }
                out.push(Spanned {
                    tok: Tok::Num { value, imag, integral },
                    pos,
                });
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_alphabetic() {
                    i += 1;
                }
                out.push(Spanned {
                    tok: Tok::Ident(src[start..i].to_string()),
                    pos,
                });
            }
            _ => {
                return Err(ParseError::Syntax {
                    position: pos,
                    expected: "a number, identifier, operator, or parenthesis".into(),
                })
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    at: usize,
    end_pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|s| &s.tok)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end_pos, |s| s.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|s| s.tok.clone());
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&want) {
            self.at += 1;
            Ok(())
        } else {
            Err(ParseError::Syntax {
                position: self.pos(),
                expected: what.into(),
            })
        }
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    acc = expr::add(acc, self.term()?);
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    acc = expr::sub(acc, self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    acc = expr::mul(acc, self.factor()?);
                }
                Some(Tok::Slash) => {
                    self.at += 1;
                    acc = expr::div(acc, self.factor()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            Ok(expr::neg(self.factor()?))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.at += 1;
        let mut sign = 1.0;
        match self.peek() {
            Some(Tok::Minus) => {
                sign = -1.0;
                self.at += 1;
            }
            Some(Tok::Plus) => {
                self.at += 1;
            }
            _ => {}
        }
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num { value, imag: false, integral }) => {
                let p = sign * value;
                if integral && p.abs() <= i32::MAX as f64 {
                    Ok(expr::ipow(base, p as i32))
                } else {
                    Ok(expr::rpow(base, p))
                }
            }
            Some(Tok::Num { imag: true, .. }) => Err(ParseError::Syntax {
                position: pos,
                expected: "a real exponent".into(),
            }),
            _ => Err(ParseError::Syntax {
                position: pos,
                expected: "a numeric exponent".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num { value, imag, .. }) => Ok(if imag {
                expr::con(Complex64::new(0.0, value))
            } else {
                expr::real(value)
            }),
            Some(Tok::Ident(name)) => match name.as_str() {
                "z" => Ok(expr::z()),
                "i" => Ok(expr::con(Complex64::I)),
                "exp" | "log" => {
                    self.expect(Tok::LParen, "'(' after function name")?;
                    let inner = self.expr()?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(if name == "exp" {
                        expr::exp(inner)
                    } else {
                        expr::log(inner)
                    })
                }
                _ => Err(ParseError::UnknownIdentifier { name, position: pos }),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            _ => Err(ParseError::Syntax {
                position: pos,
                expected: "a number, 'z', 'i', 'exp', 'log', or '('".into(),
            }),
        }
    }
}

/// Parse source text into an expression tree.
pub fn parse(src: &str) -> Result<Expr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        at: 0,
        end_pos: src.len() + 1,
    };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return Err(ParseError::Syntax {
            position: p.pos(),
            expected: "an operator or end of input".into(),
        });
    }
    Ok(e)
}
