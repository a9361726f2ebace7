use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::ToPrimitive;

use super::format::{format_indices, format_poly, format_vector};
use super::parser::{statements, ExprParser, Statement};
use super::{ParseError, ParseErrorKind, Pos};
use crate::local::LocalRing;
use crate::neron::{AlgebraPresentation, DesingularizationInput};
use crate::poly::{Polynomial, Var};
use crate::scalar::Rational;
use crate::universe::{Universe, VarKind};

type Poly = Polynomial<Rational>;

const REQUIRED: [&str; 9] = ["vars", "Yvars", "I", "f", "cols", "N", "yprime", "k", "c"];
const OPTIONAL: [&str; 3] = ["J", "D", "field"];

/// A desingularization problem as written in a `.nrn` file. Indices are
/// zero-based here and one-based in the file.
#[derive(Clone, Debug, PartialEq)]
pub struct ProblemFile {
    pub field: Option<String>,
    pub universe: Arc<Universe>,
    pub j: Vec<Poly>,
    pub i: Vec<Poly>,
    pub f: Vec<usize>,
    pub cols: Vec<usize>,
    pub n: Poly,
    pub yprime: Vec<Poly>,
    pub k: u32,
    pub c: u32,
    pub trunc: Option<u32>,
}

impl ProblemFile {
    pub fn to_input(&self) -> Result<DesingularizationInput<Rational>, ParseError> {
        let ring = LocalRing::new(self.universe.clone(), self.j.clone())
            .map_err(|e| ParseError::invalid(format!("J: {e}")))?;
        let algebra = AlgebraPresentation { ring, generators: self.i.clone() };
        DesingularizationInput::new(
            algebra,
            self.f.clone(),
            self.cols.clone(),
            self.n.clone(),
            self.yprime.clone(),
            self.k,
            self.c,
        )
        .map_err(|e| ParseError::invalid(e.to_string()))
    }
}

fn small_int(p: &mut ExprParser<'_>) -> Result<(u32, Pos), ParseError> {
    let (n, pos) = p.int()?;
    let v = n.to_u32().ok_or_else(|| ParseError::syntax(pos, "integer too large"))?;
    p.finish()?;
    Ok((v, pos))
}

fn indices(p: &mut ExprParser<'_>, key: &str, max: usize) -> Result<Vec<usize>, ParseError> {
    let idx = p.index_vector()?;
    p.finish()?;
    idx.into_iter()
        .map(|(i, pos)| {
            if i == 0 || i > max {
                Err(ParseError::at(pos, ParseErrorKind::IndexOutOfRange { key: key.into(), index: i, max }))
            } else {
                Ok(i - 1)
            }
        })
        .collect()
}

pub(crate) fn by_key(
    stmts: Vec<Statement>,
    allowed: &dyn Fn(&str) -> bool,
) -> Result<BTreeMap<String, Statement>, ParseError> {
    let mut map = BTreeMap::new();
    for s in stmts {
        if !allowed(&s.key) {
            return Err(ParseError::at(s.pos, ParseErrorKind::UnknownKey(s.key.clone())));
        }
        let label = s.label();
        if map.contains_key(&label) {
            return Err(ParseError::at(s.pos, ParseErrorKind::DuplicateKey(label)));
        }
        map.insert(label, s);
    }
    Ok(map)
}

pub(crate) fn names(stmt: &Statement) -> Result<Vec<String>, ParseError> {
    let none = |_: &str| None;
    let mut p = ExprParser::new(stmt, &none);
    Ok(p.name_list()?.into_iter().map(|(n, _)| n).collect())
}

pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    let map = by_key(statements(text)?, &|k| REQUIRED.contains(&k) || OPTIONAL.contains(&k))?;
    for key in REQUIRED {
        if !map.contains_key(key) {
            return Err(ParseError { pos: None, kind: ParseErrorKind::MissingKey(key.into()) });
        }
    }
    let get = |k: &str| &map[k];

    let field = match map.get("field") {
        Some(s) => {
            let none = |_: &str| None;
            let mut p = ExprParser::new(s, &none);
            let (name, pos) = p.ident()?;
            p.finish()?;
            if name != "QQ" {
                return Err(ParseError::at(
                    pos,
                    ParseErrorKind::Invalid(format!("unsupported field '{name}', only QQ")),
                ));
            }
            Some(name)
        }
        None => None,
    };

    let xs = names(get("vars"))?;
    let ys = names(get("Yvars"))?;
    let universe = Arc::new(
        Universe::new(&xs, &ys).map_err(|e| ParseError::at(get("vars").pos, ParseErrorKind::Invalid(e.to_string())))?,
    );
    let u = universe.clone();
    let lookup = move |name: &str| -> Option<Var> {
        u.lookup(name).filter(|&v| matches!(u.kind(v), VarKind::Local | VarKind::Unknown))
    };

    let j = match map.get("J") {
        Some(s) => {
            let mut p = ExprParser::new(s, &lookup);
            p.poly_list()?
        }
        None => vec![],
    };
    let i = {
        let mut p = ExprParser::new(get("I"), &lookup);
        let gens = p.poly_list()?;
        if gens.is_empty() {
            return Err(ParseError::syntax(get("I").end, "I needs at least one generator"));
        }
        gens
    };
    let f = indices(&mut ExprParser::new(get("f"), &lookup), "f", i.len())?;
    let cols = indices(&mut ExprParser::new(get("cols"), &lookup), "cols", ys.len())?;
    let n = {
        let mut p = ExprParser::new(get("N"), &lookup);
        let n = p.poly()?;
        p.finish()?;
        n
    };
    let yprime = {
        let mut p = ExprParser::new(get("yprime"), &lookup);
        let v = p.poly_vector()?;
        p.finish()?;
        v
    };
    let (k, kpos) = small_int(&mut ExprParser::new(get("k"), &lookup))?;
    if k == 0 {
        return Err(ParseError::at(kpos, ParseErrorKind::NonPositiveK));
    }
    let (c, _) = small_int(&mut ExprParser::new(get("c"), &lookup))?;
    let trunc = match map.get("D") {
        Some(s) => {
            let (d, pos) = small_int(&mut ExprParser::new(s, &lookup))?;
            if d == 0 {
                return Err(ParseError::at(pos, ParseErrorKind::Invalid("D must be positive".into())));
            }
            Some(d)
        }
        None => None,
    };

    let pf = ProblemFile { field, universe, j, i, f, cols, n, yprime, k, c, trunc };
    pf.to_input()?;
    Ok(pf)
}

/// A bracketed vector of polynomials in the base variables, e.g. `[x^3, 0]`.
pub fn parse_base_vector(text: &str, universe: &Universe) -> Result<Vec<Poly>, ParseError> {
    let stmts = statements(&format!("z = {text};"))?;
    let lookup = |name: &str| universe.lookup(name).filter(|&v| universe.is_local(v));
    let mut p = ExprParser::new(&stmts[0], &lookup);
    let v = p.poly_vector()?;
    p.finish()?;
    Ok(v)
}

pub(crate) fn names_line(key: &str, vars: &[Var], u: &Universe) -> String {
    let names: Vec<&str> = vars.iter().map(|&v| u.name(v)).collect();
    format!("{key} {};\n", names.join(", "))
}

pub(crate) fn poly_list_line(key: &str, ps: &[Poly], u: &Universe) -> String {
    let parts: Vec<String> = ps.iter().map(|p| format_poly(p, u)).collect();
    format!("{key} = {};\n", parts.join(", "))
}

pub fn render_problem(pf: &ProblemFile) -> String {
    let u = &pf.universe;
    let mut out = String::new();
    if let Some(field) = &pf.field {
        out.push_str(&format!("field = {field};\n"));
    }
    out.push_str(&names_line("vars", &u.local_vars(), u));
    if !pf.j.is_empty() {
        out.push_str(&poly_list_line("J", &pf.j, u));
    }
    out.push_str(&names_line("Yvars", &u.unknown_vars(), u));
    out.push_str(&poly_list_line("I", &pf.i, u));
    out.push_str(&format!("f = {};\n", format_indices(&pf.f)));
    out.push_str(&format!("cols = {};\n", format_indices(&pf.cols)));
    out.push_str(&format!("N = {};\n", format_poly(&pf.n, u)));
    out.push_str(&format!("yprime = {};\n", format_vector(&pf.yprime, u)));
    out.push_str(&format!("k = {};\n", pf.k));
    out.push_str(&format!("c = {};\n", pf.c));
    if let Some(d) = pf.trunc {
        out.push_str(&format!("D = {d};\n"));
    }
    out
}
