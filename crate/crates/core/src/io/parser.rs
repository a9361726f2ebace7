use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use super::lexer::{tokenize, Pos, Tok, Token};
use super::ParseError;
use crate::poly::{LocalFraction, Polynomial, Var};
use crate::scalar::Rational;

type Poly = Polynomial<Rational>;

/// `key[indices] = value ;`
#[derive(Clone, Debug)]
pub struct Statement {
    pub key: String,
    pub pos: Pos,
    pub indices: Vec<usize>,
    pub value: Vec<Token>,
    /// Position of the terminating `;`.
    pub end: Pos,
}

impl Statement {
    pub fn label(&self) -> String {
        if self.indices.is_empty() {
            self.key.clone()
        } else {
            let idx: Vec<String> = self.indices.iter().map(ToString::to_string).collect();
            format!("{}[{}]", self.key, idx.join(","))
        }
    }
}

pub fn statements(text: &str) -> Result<Vec<Statement>, ParseError> {
    let (toks, eof) = tokenize(text)?;
    let mut out = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        let (key, pos) = match &toks[i].tok {
            Tok::Ident(s) => (s.clone(), toks[i].pos),
            other => return Err(ParseError::syntax(toks[i].pos, format!("expected a key, found {other}"))),
        };
        i += 1;
        let mut indices = Vec::new();
        if toks.get(i).map(|t| &t.tok) == Some(&Tok::LBracket) {
            i += 1;
            loop {
                match toks.get(i) {
                    Some(Token { tok: Tok::Int(n), pos }) => {
                        indices.push(n.to_usize().ok_or_else(|| ParseError::syntax(*pos, "index too large"))?);
                        i += 1;
                    }
                    Some(t) => return Err(ParseError::syntax(t.pos, format!("expected an index, found {}", t.tok))),
                    None => return Err(ParseError::syntax(eof, "unexpected end of input")),
                }
                match toks.get(i) {
                    Some(Token { tok: Tok::Comma, .. }) => i += 1,
                    Some(Token { tok: Tok::RBracket, .. }) => {
                        i += 1;
                        break;
                    }
                    Some(t) => return Err(ParseError::syntax(t.pos, format!("expected ',' or ']', found {}", t.tok))),
                    None => return Err(ParseError::syntax(eof, "unexpected end of input")),
                }
            }
        }
        // declarations may omit '=': `vars x, z;`
        if toks.get(i).map(|t| &t.tok) == Some(&Tok::Eq) {
            i += 1;
        }
        let start = i;
        while i < toks.len() && toks[i].tok != Tok::Semi {
            i += 1;
        }
        if i == toks.len() {
            return Err(ParseError::syntax(eof, format!("statement '{key}' is missing its terminating ';'")));
        }
        out.push(Statement { key, pos, indices, value: toks[start..i].to_vec(), end: toks[i].pos });
        i += 1;
    }
    Ok(out)
}

/// Recursive-descent parser over one statement's value tokens.
pub struct ExprParser<'a> {
    toks: &'a [Token],
    i: usize,
    end: Pos,
    lookup: &'a dyn Fn(&str) -> Option<Var>,
}

impl<'a> ExprParser<'a> {
    pub fn new(stmt: &'a Statement, lookup: &'a dyn Fn(&str) -> Option<Var>) -> Self {
        ExprParser { toks: &stmt.value, i: 0, end: stmt.end, lookup }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.tok)
    }

    fn here(&self) -> Pos {
        self.toks.get(self.i).map_or(self.end, |t| t.pos)
    }

    fn unexpected(&self, what: &str) -> ParseError {
        match self.toks.get(self.i) {
            Some(t) => ParseError::syntax(t.pos, format!("expected {what}, found {}", t.tok)),
            None => ParseError::syntax(self.end, format!("expected {what}, found ';'")),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, tok: &Tok) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.unexpected(&tok.to_string()))
        }
    }

    pub fn at_end(&self) -> bool {
        self.i == self.toks.len()
    }

    pub fn finish(&self) -> Result<(), ParseError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.unexpected("';'"))
        }
    }

    pub fn is_next(&self, tok: &Tok) -> bool {
        self.peek() == Some(tok)
    }

    pub fn int(&mut self) -> Result<(BigInt, Pos), ParseError> {
        let pos = self.here();
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = n.clone();
                self.i += 1;
                Ok((n, pos))
            }
            _ => Err(self.unexpected("an integer")),
        }
    }

    pub fn ident(&mut self) -> Result<(String, Pos), ParseError> {
        let pos = self.here();
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.i += 1;
                Ok((s, pos))
            }
            _ => Err(self.unexpected("a name")),
        }
    }

    /// `expr := ['+'|'-'] term (('+'|'-') term)*`
    pub fn poly(&mut self) -> Result<Poly, ParseError> {
        let mut acc = if self.eat(&Tok::Minus) {
            -self.term()?
        } else {
            self.eat(&Tok::Plus);
            self.term()?
        };
        loop {
            if self.eat(&Tok::Plus) {
                acc += self.term()?;
            } else if self.eat(&Tok::Minus) {
                acc -= self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Poly, ParseError> {
        let mut acc = self.factor()?;
        while self.eat(&Tok::Star) {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Poly, ParseError> {
        let base = self.atom()?;
        if self.eat(&Tok::Caret) {
            let (e, pos) = self.int()?;
            let e = e.to_u32().ok_or_else(|| ParseError::syntax(pos, "exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly, ParseError> {
        let pos = self.here();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.i += 1;
                // a rational literal p/q
                if self.is_next(&Tok::Slash) && matches!(self.toks.get(self.i + 1).map(|t| &t.tok), Some(Tok::Int(_))) {
                    self.i += 1;
                    let (q, qpos) = self.int()?;
                    if q.is_zero() {
                        return Err(ParseError::syntax(qpos, "zero denominator"));
                    }
                    return Ok(Poly::constant(Rational::new(n, q)));
                }
                Ok(Poly::constant(Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.i += 1;
                match (self.lookup)(&name) {
                    Some(v) => Ok(Poly::var(v)),
                    None => Err(ParseError::undeclared(pos, &name)),
                }
            }
            Some(Tok::LParen) => {
                self.i += 1;
                let p = self.poly()?;
                self.expect(&Tok::RParen)?;
                Ok(p)
            }
            _ => Err(self.unexpected("a number, variable or '('")),
        }
    }

    /// `num` or `(num) / (den)` with a unit denominator.
    pub fn fraction(&mut self) -> Result<LocalFraction<Rational>, ParseError> {
        let num = self.poly()?;
        if self.eat(&Tok::Slash) {
            let pos = self.here();
            let den = self.factor()?;
            return LocalFraction::new(num, den)
                .map_err(|_| ParseError::syntax(pos, "denominator is not a unit at the origin"));
        }
        Ok(LocalFraction::from_poly(num))
    }

    /// `[p, q, ...]`, possibly empty.
    pub fn poly_vector(&mut self) -> Result<Vec<Poly>, ParseError> {
        self.expect(&Tok::LBracket)?;
        let mut out = Vec::new();
        if self.eat(&Tok::RBracket) {
            return Ok(out);
        }
        loop {
            out.push(self.poly()?);
            if self.eat(&Tok::RBracket) {
                return Ok(out);
            }
            self.expect(&Tok::Comma)?;
        }
    }

    /// Comma-separated polynomials up to the end of the statement, possibly none.
    pub fn poly_list(&mut self) -> Result<Vec<Poly>, ParseError> {
        let mut out = Vec::new();
        if self.at_end() {
            return Ok(out);
        }
        loop {
            out.push(self.poly()?);
            if self.at_end() {
                return Ok(out);
            }
            self.expect(&Tok::Comma)?;
        }
    }

    /// `[i, j, ...]` of integers with positions.
    pub fn index_vector(&mut self) -> Result<Vec<(usize, Pos)>, ParseError> {
        self.expect(&Tok::LBracket)?;
        let mut out = Vec::new();
        if self.eat(&Tok::RBracket) {
            return Ok(out);
        }
        loop {
            let (n, pos) = self.int()?;
            out.push((n.to_usize().ok_or_else(|| ParseError::syntax(pos, "index too large"))?, pos));
            if self.eat(&Tok::RBracket) {
                return Ok(out);
            }
            self.expect(&Tok::Comma)?;
        }
    }

    /// Comma-separated names up to the end of the statement.
    pub fn name_list(&mut self) -> Result<Vec<(String, Pos)>, ParseError> {
        let mut out = vec![self.ident()?];
        while self.eat(&Tok::Comma) {
            out.push(self.ident()?);
        }
        self.finish()?;
        Ok(out)
    }

    /// `[[a, b], [c, d]]`.
    pub fn poly_matrix(&mut self) -> Result<Vec<Vec<Poly>>, ParseError> {
        self.expect(&Tok::LBracket)?;
        let mut rows = Vec::new();
        if self.eat(&Tok::RBracket) {
            return Ok(rows);
        }
        loop {
            rows.push(self.poly_vector()?);
            if self.eat(&Tok::RBracket) {
                return Ok(rows);
            }
            self.expect(&Tok::Comma)?;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn lookup(name: &str) -> Option<Var> {
        ["x", "Y", "T"].iter().position(|n| *n == name).map(|i| Var(i as u32))
    }

    fn parse_value(text: &str) -> Result<Poly, ParseError> {
        let stmts = statements(text)?;
        let mut p = ExprParser::new(&stmts[0], &lookup);
        let out = p.poly()?;
        p.finish()?;
        Ok(out)
    }

    #[test]
    fn precedence_and_literals() {
        let x = Poly::var(Var(0));
        let p = parse_value("p = -3/4*x^2 + (x - 1)^2 * 2;").unwrap();
        let expected = &(&x.pow(2).scale(&rational(-3, 4)) + &(&x - &Poly::one()).pow(2).scale(&rational(2, 1)));
        assert_eq!(&p, expected);
    }

    #[test]
    fn dangling_operator_points_at_the_bracket() {
        let stmts = statements("yprime = [x + ];").unwrap();
        let mut p = ExprParser::new(&stmts[0], &lookup);
        let err = p.poly_vector().unwrap_err();
        assert_eq!(err.pos, Some(Pos { line: 1, col: 15 }));
    }

    #[test]
    fn undeclared_names_are_reported() {
        let err = parse_value("p = x + w;").unwrap_err();
        assert!(err.to_string().contains("'w'"));
        assert_eq!(err.pos, Some(Pos { line: 1, col: 9 }));
    }

    #[test]
    fn slash_between_non_numbers_is_rejected() {
        assert!(parse_value("p = x/2;").is_err());
    }

    #[test]
    fn missing_semicolon() {
        assert!(statements("k = 1").is_err());
    }
}
