//! A small expression language for part maps and operators, e.g.
//! `devsym(curl)` or `skew(curl) + tr(curl)`.
//!
//! Names are case-insensitive. `S(e)` post-composes when `S` is a part map and
//! composes (or pre-composes a part map) when `S` is an operator.

mod elaborate;
mod lexer;
mod parser;

pub use elaborate::{compile, compile_operator, compile_part_map, elaborate, ElabOptions, Elaborated, Registry};
pub use lexer::{tokenize, Token, TokenKind};
pub use parser::{parse, parse_tokens, Expr};
