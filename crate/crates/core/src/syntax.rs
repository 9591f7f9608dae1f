//! Text syntax for theories.
//!
//! One formula per line:
//!
//! ```text
//! line  := side "->" side
//! side  := "1" | "top" | ident+      # repetition encodes multiplicity
//! ```
//!
//! `#` starts a comment that runs to the end of the line and blank lines are
//! ignored. Identifiers start with a letter and continue with letters, digits,
//! or `_`. Names starting with `_` are reserved for generated attributes.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use thiserror::Error;

use crate::formula::{Attr, AttributeMultiset, Mfd, Theory, DEFAULT_MULTIPLICITY_CAP};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    /// 1-based line number.
    pub line: usize,
    /// 1-based column, counted in characters.
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("`{0}` is reserved and cannot name an attribute")]
    ReservedName(String),
    #[error("expected `->`")]
    MissingArrow,
    #[error("more than one `->` on a line")]
    ExtraArrow,
    #[error("empty {0}; write `1` for the empty multiset")]
    EmptySide(&'static str),
    #[error("`{0}` must stand alone on its side")]
    TopMixed(String),
    #[error("multiplicity overflow")]
    Overflow,
    #[error("expected exactly one formula")]
    NotSingleFormula,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Top(String),
    Arrow,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic()
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

/// Splits one line (comment already allowed) into positioned tokens.
fn lex_line(text: &str, line: usize) -> Result<Vec<(usize, Token)>, ParseError> {
    let err = |column, kind| ParseError { line, column, kind };
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let column = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '-' && chars.get(i + 1) == Some(&'>') {
            tokens.push((column, Token::Arrow));
            i += 2;
            continue;
        }
        if is_ident_char(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            if word == "1" || word == "top" {
                tokens.push((column, Token::Top(word)));
            } else if word.starts_with('_') || !is_ident_start(c) {
                return Err(err(column, ParseErrorKind::ReservedName(word)));
            } else {
                tokens.push((column, Token::Ident(word)));
            }
            continue;
        }
        return Err(err(column, ParseErrorKind::UnexpectedChar(c)));
    }
    Ok(tokens)
}

fn parse_side(
    tokens: &[(usize, Token)],
    line: usize,
    column: usize,
    which: &'static str,
) -> Result<AttributeMultiset, ParseError> {
    let err = |column, kind| ParseError { line, column, kind };
    if tokens.is_empty() {
        return Err(err(column, ParseErrorKind::EmptySide(which)));
    }
    let mut ms = AttributeMultiset::top();
    for (col, tok) in tokens {
        match tok {
            Token::Top(_) if tokens.len() == 1 => {}
            Token::Top(word) => return Err(err(*col, ParseErrorKind::TopMixed(word.clone()))),
            Token::Ident(name) => ms
                .add(Attr::new(name), 1, DEFAULT_MULTIPLICITY_CAP)
                .map_err(|_| err(*col, ParseErrorKind::Overflow))?,
            Token::Arrow => return Err(err(*col, ParseErrorKind::ExtraArrow)),
        }
    }
    Ok(ms)
}

/// Parses one line. Returns `None` for blank and comment-only lines.
fn parse_line(text: &str, line: usize) -> Result<Option<Mfd>, ParseError> {
    let tokens = lex_line(text, line)?;
    if tokens.is_empty() {
        return Ok(None);
    }
    let arrows: Vec<usize> = tokens
        .iter()
        .enumerate()
        .filter(|(_, (_, t))| *t == Token::Arrow)
        .map(|(i, _)| i)
        .collect();
    let end_column = text.chars().take_while(|&c| c != '#').count() + 1;
    match arrows.as_slice() {
        [] => Err(ParseError {
            line,
            column: end_column,
            kind: ParseErrorKind::MissingArrow,
        }),
        [at] => {
            let arrow_col = tokens[*at].0;
            let lhs = parse_side(&tokens[..*at], line, arrow_col, "antecedent")?;
            let rhs = parse_side(&tokens[at + 1..], line, end_column, "consequent")?;
            Ok(Some(Mfd::new(lhs, rhs)))
        }
        [_, second, ..] => Err(ParseError {
            line,
            column: tokens[*second].0,
            kind: ParseErrorKind::ExtraArrow,
        }),
    }
}

pub fn parse_theory(text: &str) -> Result<Theory, ParseError> {
    let mut theory = Theory::new();
    for (i, line) in text.lines().enumerate() {
        if let Some(f) = parse_line(line, i + 1)? {
            theory.push(f);
        }
    }
    Ok(theory)
}

/// Parses a single formula such as `"p p -> q"`.
pub fn parse_mfd(text: &str) -> Result<Mfd, ParseError> {
    let theory = parse_theory(text)?;
    match theory.formulas() {
        [f] => Ok(f.clone()),
        _ => Err(ParseError {
            line: 1,
            column: 1,
            kind: ParseErrorKind::NotSingleFormula,
        }),
    }
}

/// Parses one side on its own, e.g. `"loc area area"` or `"1"`.
pub fn parse_multiset(text: &str) -> Result<AttributeMultiset, ParseError> {
    let tokens = lex_line(text, 1)?;
    parse_side(&tokens, 1, text.chars().count() + 1, "multiset")
}

/// One formula per line in theory order.
pub fn format_theory(theory: &Theory) -> String {
    let mut out = String::new();
    for f in theory.formulas() {
        let _ = writeln!(out, "{f}");
    }
    out
}

/// Checks that `name` is accepted by the grammar as an attribute.
pub fn is_valid_attr_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if is_ident_start(c) => chars.all(is_ident_char) && name != "top",
        _ => false,
    }
}

impl core::str::FromStr for Mfd {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_mfd(s)
    }
}

impl core::str::FromStr for Theory {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_theory(s)
    }
}
