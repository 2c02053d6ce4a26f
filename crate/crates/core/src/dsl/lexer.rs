use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Rational};

#[derive(Clone, Debug, PartialEq)]
pub enum TokenKind {
    /// Lower-cased identifier.
    Name(String),
    Number(Rational),
    Plus,
    Star,
    LParen,
    RParen,
}

impl TokenKind {
    pub fn describe(&self) -> String {
        match self {
            TokenKind::Name(s) => format!("name '{s}'"),
            TokenKind::Number(r) => format!("number '{r}'"),
            TokenKind::Plus => "'+'".into(),
            TokenKind::Star => "'*'".into(),
            TokenKind::LParen => "'('".into(),
            TokenKind::RParen => "')'".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    /// Byte offset into the source.
    pub pos: usize,
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Splits `text` into tokens. Numbers are `[-]digits[/digits]`.
pub fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let single = match c {
            '+' => Some(TokenKind::Plus),
            '*' => Some(TokenKind::Star),
            '(' => Some(TokenKind::LParen),
            ')' => Some(TokenKind::RParen),
            _ => None,
        };
        if let Some(kind) = single {
            chars.next();
            out.push(Token { kind, pos });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut end = pos;
            while let Some(&(i, d)) = chars.peek() {
                if !is_name_char(d) {
                    break;
                }
                end = i + d.len_utf8();
                chars.next();
            }
            out.push(Token {
                kind: TokenKind::Name(text[pos..end].to_ascii_lowercase()),
                pos,
            });
            continue;
        }
        if c.is_ascii_digit() || c == '-' {
            let mut end = pos + 1;
            chars.next();
            let mut seen_slash = false;
            while let Some(&(i, d)) = chars.peek() {
                if d.is_ascii_digit() || (d == '/' && !seen_slash) {
                    seen_slash |= d == '/';
                    end = i + 1;
                    chars.next();
                } else {
                    break;
                }
            }
            let lit = &text[pos..end];
            let value = parse_rational(lit).map_err(|_| Error::Lex {
                pos,
                msg: format!("malformed rational literal '{lit}'"),
            })?;
            out.push(Token {
                kind: TokenKind::Number(value),
                pos,
            });
            continue;
        }
        return Err(Error::Lex {
            pos,
            msg: format!("unexpected character '{c}'"),
        });
    }
    Ok(out)
}
