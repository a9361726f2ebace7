use std::fmt;

use num_bigint::BigInt;

use super::ParseError;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, PartialOrd, Ord)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}", self.line, self.col)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Eq,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "'{s}'"),
            Tok::Int(n) => write!(f, "'{n}'"),
            Tok::Plus => f.write_str("'+'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Caret => f.write_str("'^'"),
            Tok::Slash => f.write_str("'/'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::LBracket => f.write_str("'['"),
            Tok::RBracket => f.write_str("']'"),
            Tok::Comma => f.write_str("','"),
            Tok::Semi => f.write_str("';'"),
            Tok::Eq => f.write_str("'='"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

/// Splits text into tokens. `#` starts a comment running to the end of the
/// line. Identifiers may carry trailing primes (`s'`).
pub fn tokenize(text: &str) -> Result<(Vec<Token>, Pos), ParseError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let mut pos = Pos { line: 1, col: 1 };
    let advance = |c: char, pos: &mut Pos| {
        if c == '\n' {
            pos.line += 1;
            pos.col = 1;
        } else {
            pos.col += 1;
        }
    };
    while let Some(&c) = chars.peek() {
        let start = pos;
        if c == '#' {
            while let Some(&c) = chars.peek() {
                if c == '\n' {
                    break;
                }
                chars.next();
                advance(c, &mut pos);
            }
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            advance(c, &mut pos);
            continue;
        }
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_digit()) {
                s.push(d);
                chars.next();
                advance(d, &mut pos);
            }
            out.push(Token { tok: Tok::Int(s.parse().expect("digits")), pos: start });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(&d) = chars.peek().filter(|d| d.is_ascii_alphanumeric() || **d == '_') {
                s.push(d);
                chars.next();
                advance(d, &mut pos);
            }
            while let Some(&d) = chars.peek().filter(|d| **d == '\'') {
                s.push(d);
                chars.next();
                advance(d, &mut pos);
            }
            out.push(Token { tok: Tok::Ident(s), pos: start });
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '=' => Tok::Eq,
            other => return Err(ParseError::syntax(start, format!("unexpected character '{other}'"))),
        };
        chars.next();
        advance(c, &mut pos);
        out.push(Token { tok, pos: start });
    }
    Ok((out, pos))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_primes() {
        let (toks, end) = tokenize("s' = 1 + 2*T; # note\nk = 12;").unwrap();
        assert_eq!(toks[0].tok, Tok::Ident("s'".into()));
        assert_eq!(toks[1].pos, Pos { line: 1, col: 4 });
        let k = toks.iter().find(|t| t.tok == Tok::Ident("k".into())).unwrap();
        assert_eq!(k.pos, Pos { line: 2, col: 1 });
        assert_eq!(end, Pos { line: 2, col: 8 });
    }

    #[test]
    fn rejects_stray_characters() {
        let err = tokenize("N = 1 $ 2;").unwrap_err();
        assert_eq!(err.pos, Some(Pos { line: 1, col: 7 }));
    }
}
