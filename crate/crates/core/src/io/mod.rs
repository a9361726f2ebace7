//! The `.nrn` problem format, the rendered presentation format and
//! canonical polynomial text.

mod format;
mod lexer;
mod parser;
mod presentation;
mod problem;

use std::fmt;

pub use format::{format_fraction, format_indices, format_poly, format_vector, format_with_prefix};
pub use lexer::Pos;
pub use presentation::{is_presentation, parse_presentation, render_presentation, SECTIONS};
pub use problem::{parse_base_vector, parse_problem, render_problem, ProblemFile};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ParseErrorKind {
    Syntax(String),
    Undeclared(String),
    MissingKey(String),
    DuplicateKey(String),
    UnknownKey(String),
    IndexOutOfRange { key: String, index: usize, max: usize },
    NonPositiveK,
    Invalid(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(m) => write!(f, "syntax error: {m}"),
            ParseErrorKind::Undeclared(n) => write!(f, "undeclared variable '{n}'"),
            ParseErrorKind::MissingKey(k) => write!(f, "missing key '{k}'"),
            ParseErrorKind::DuplicateKey(k) => write!(f, "key '{k}' given twice"),
            ParseErrorKind::UnknownKey(k) => write!(f, "unknown key '{k}'"),
            ParseErrorKind::IndexOutOfRange { key, index, max } => {
                write!(f, "index {index} in '{key}' is out of range 1..={max}")
            }
            ParseErrorKind::NonPositiveK => f.write_str("k must be a positive integer"),
            ParseErrorKind::Invalid(m) => f.write_str(m),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ParseError {
    pub pos: Option<Pos>,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub fn syntax(pos: Pos, msg: impl Into<String>) -> Self {
        ParseError { pos: Some(pos), kind: ParseErrorKind::Syntax(msg.into()) }
    }

    pub fn undeclared(pos: Pos, name: &str) -> Self {
        ParseError { pos: Some(pos), kind: ParseErrorKind::Undeclared(name.into()) }
    }

    pub fn at(pos: Pos, kind: ParseErrorKind) -> Self {
        ParseError { pos: Some(pos), kind }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        ParseError { pos: None, kind: ParseErrorKind::Invalid(msg.into()) }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.pos {
            Some(p) => write!(f, "{p}: {}", self.kind),
            None => write!(f, "{}", self.kind),
        }
    }
}

impl std::error::Error for ParseError {}
