//! Recursive descent for
//!
//! ```text
//! expr := term { "+" term }
//! term := [rational "*"] atom
//! atom := NAME | NAME "(" expr ")" | "(" expr ")"
//! ```

use std::fmt;

use super::lexer::{tokenize, Token, TokenKind};
use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Untyped syntax tree; whether a name is a part map or an operator is
/// decided during elaboration.
#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Name(String),
    /// `NAME(expr)`.
    Apply(String, Box<Expr>),
    /// At least two summands, in source order.
    Sum(Vec<Expr>),
    Scale(Rational, Box<Expr>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Name(n) => write!(f, "{n}"),
            Expr::Apply(n, arg) => write!(f, "{n}({arg})"),
            Expr::Sum(terms) => {
                for (i, t) in terms.iter().enumerate() {
                    if i > 0 {
                        write!(f, " + ")?;
                    }
                    match t {
                        Expr::Sum(_) => write!(f, "({t})")?,
                        _ => write!(f, "{t}")?,
                    }
                }
                Ok(())
            }
            Expr::Scale(c, e) => match **e {
                Expr::Sum(_) | Expr::Scale(..) => write!(f, "{c} * ({e})"),
                _ => write!(f, "{c} * {e}"),
            },
        }
    }
}

struct Parser<'a> {
    tokens: &'a [Token],
    at: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&TokenKind> {
        self.tokens.get(self.at).map(|t| &t.kind)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |t| t.pos)
    }

    fn found(&self) -> String {
        self.peek().map_or_else(|| "end of input".into(), TokenKind::describe)
    }

    fn expect(&mut self, kind: TokenKind) -> Result<()> {
        if self.peek() == Some(&kind) {
            self.at += 1;
            Ok(())
        } else {
            Err(Error::Syntax {
                pos: self.pos(),
                expected: kind.describe(),
                found: self.found(),
            })
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut terms = vec![self.term()?];
        while self.peek() == Some(&TokenKind::Plus) {
            self.at += 1;
            terms.push(self.term()?);
        }
        Ok(if terms.len() == 1 { terms.pop().unwrap() } else { Expr::Sum(terms) })
    }

    fn term(&mut self) -> Result<Expr> {
        if let Some(TokenKind::Number(c)) = self.peek() {
            let c = c.clone();
            self.at += 1;
            self.expect(TokenKind::Star)?;
            return Ok(Expr::Scale(c, Box::new(self.atom()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(TokenKind::Name(name)) => {
                self.at += 1;
                if self.peek() == Some(&TokenKind::LParen) {
                    self.at += 1;
                    let arg = self.expr()?;
                    self.expect(TokenKind::RParen)?;
                    Ok(Expr::Apply(name, Box::new(arg)))
                } else {
                    Ok(Expr::Name(name))
                }
            }
            Some(TokenKind::LParen) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(TokenKind::RParen)?;
                Ok(e)
            }
            _ => Err(Error::Syntax {
                pos: self.pos(),
                expected: "a name or '('".into(),
                found: self.found(),
            }),
        }
    }
}

/// Parses a token list; `end` is the source length, reported for errors at end of input.
pub fn parse_tokens(tokens: &[Token], end: usize) -> Result<Expr> {
    let mut p = Parser { tokens, at: 0, end };
    let e = p.expr()?;
    if p.at != tokens.len() {
        return Err(Error::Syntax {
            pos: p.pos(),
            expected: "'+' or end of input".into(),
            found: p.found(),
        });
    }
    Ok(e)
}

pub fn parse(text: &str) -> Result<Expr> {
    parse_tokens(&tokenize(text)?, text.len())
}
