use std::fmt::Write as _;
use std::sync::Arc;

use num_traits::ToPrimitive;

use super::format::{format_fraction, format_indices, format_poly, format_vector, format_with_prefix};
use super::lexer::Tok;
use super::parser::{statements, ExprParser, Statement};
use super::problem::{by_key, names, names_line, poly_list_line};
use super::{ParseError, ParseErrorKind};
use crate::local::LocalRing;
use crate::neron::{CertificateKind, SmoothPresentation, VerificationReport};
use crate::poly::{PolyMatrix, Polynomial, Var};
use crate::scalar::Rational;
use crate::universe::Universe;

type Poly = Polynomial<Rational>;

pub const SECTIONS: [&str; 8] =
    ["RING", "IDEAL-I", "MATRICES", "H-SYSTEM", "G-SYSTEM", "UNITS", "CERTIFICATES", "PERM"];

fn certificate_key(kind: CertificateKind) -> &'static str {
    match kind {
        CertificateKind::ScaledGInFH => "scaled_g_in_fh",
        CertificateKind::IInSaturation => "i_in_saturation",
        CertificateKind::UnitsAtOrigin => "units_at_origin",
        CertificateKind::TaylorCongruence => "taylor_congruence",
    }
}

fn matrix_str(m: &PolyMatrix<Rational>, u: &Universe) -> String {
    let rows: Vec<String> = (0..m.rows()).map(|i| format_vector(m.row(i), u)).collect();
    format!("[{}]", rows.join(", "))
}

/// Canonical text of a presentation; `report`, when given, fills the
/// certificates section.
pub fn render_presentation(p: &SmoothPresentation<Rational>, report: Option<&VerificationReport>) -> String {
    let u = p.universe().as_ref();
    let mut out = String::new();
    out.push_str("RING\n");
    out.push_str(&names_line("vars", &u.local_vars(), u));
    if !p.ring.j_generators().is_empty() {
        out.push_str(&poly_list_line("J", p.ring.j_generators(), u));
    }
    out.push_str(&names_line("Yvars", &u.unknown_vars(), u));
    out.push_str(&names_line("Tvars", &u.aux_vars(), u));

    out.push_str("IDEAL-I\n");
    out.push_str(&poly_list_line("I", &p.generators, u));
    let _ = writeln!(out, "f = {};", format_indices(&p.f_indices));
    let _ = writeln!(out, "N = {};", format_poly(&p.multiplier, u));
    let _ = writeln!(out, "yprime = {};", format_vector(&p.approx, u));
    let _ = writeln!(out, "k = {};", p.k);
    let _ = writeln!(out, "c = {};", p.c);

    out.push_str("MATRICES\n");
    let _ = writeln!(out, "H = {};", matrix_str(&p.h_matrix, u));
    let _ = writeln!(out, "G = {};", matrix_str(&p.g_matrix, u));
    let _ = writeln!(out, "Gy = {};", matrix_str(&p.g_at_approx, u));

    out.push_str("H-SYSTEM\n");
    let _ = writeln!(out, "d = {};", format_poly(&p.d, u));
    let _ = writeln!(out, "e = {};", p.e);
    for (l, h) in p.h.iter().enumerate() {
        let _ = writeln!(out, "h[{}] = {};", l + 1, format_poly(h, u));
    }

    out.push_str("G-SYSTEM\n");
    for (i, a) in p.a.iter().enumerate() {
        let _ = writeln!(out, "a[{}] = {};", i + 1, format_fraction(a, u));
    }
    for (i, q) in p.q.iter().enumerate() {
        let _ = writeln!(out, "Q[{}] = {};", i + 1, format_poly(q, u));
    }
    for (i, g) in p.g_poly.iter().enumerate() {
        let _ = writeln!(out, "g[{}] = {};", i + 1, format_with_prefix(&format!("a[{}]", i + 1), g, u));
    }

    out.push_str("UNITS\n");
    let _ = writeln!(out, "s = {};", format_poly(&p.s, u));
    let _ = writeln!(out, "s' = {};", format_poly(&p.s_prime, u));

    out.push_str("CERTIFICATES\n");
    match report {
        Some(r) => {
            for c in &r.checks {
                let status = if c.passed { "ok" } else { "failed" };
                match c.index {
                    Some(i) => {
                        let _ = writeln!(out, "{}[{}] = {status};", certificate_key(c.kind), i + 1);
                    }
                    None => {
                        let _ = writeln!(out, "{} = {status};", certificate_key(c.kind));
                    }
                }
            }
        }
        None => out.push_str("# not verified\n"),
    }
    for w in &p.warnings {
        let _ = writeln!(out, "# warning: {w}");
    }

    out.push_str("PERM\n");
    let _ = writeln!(out, "perm = {};", format_indices(&p.perm));
    out
}

/// Whether the text looks like a rendered presentation rather than a
/// problem file.
pub fn is_presentation(text: &str) -> bool {
    text.lines().map(str::trim).find(|l| !l.is_empty() && !l.starts_with('#')) == Some(SECTIONS[0])
}

fn strip_sections(text: &str) -> Result<String, ParseError> {
    let mut seen = Vec::new();
    let mut out = String::with_capacity(text.len());
    for (n, line) in text.lines().enumerate() {
        let t = line.trim();
        if SECTIONS.contains(&t) {
            let expected = SECTIONS.get(seen.len()).copied();
            if expected != Some(t) {
                return Err(ParseError::syntax(
                    super::Pos { line: n + 1, col: 1 },
                    format!("section {t} out of order, expected {}", expected.unwrap_or("end of file")),
                ));
            }
            seen.push(t);
            out.push('\n');
        } else {
            out.push_str(line);
            out.push('\n');
        }
    }
    if let Some(missing) = SECTIONS.get(seen.len()) {
        return Err(ParseError::invalid(format!("missing section {missing}")));
    }
    Ok(out)
}

struct Reader<'a> {
    map: std::collections::BTreeMap<String, Statement>,
    lookup: &'a dyn Fn(&str) -> Option<Var>,
}

impl<'a> Reader<'a> {
    fn get(&self, key: &str) -> Result<&Statement, ParseError> {
        self.map.get(key).ok_or_else(|| ParseError { pos: None, kind: ParseErrorKind::MissingKey(key.into()) })
    }

    fn with<T>(
        &self,
        key: &str,
        f: impl FnOnce(&mut ExprParser<'_>) -> Result<T, ParseError>,
    ) -> Result<T, ParseError> {
        let stmt = self.get(key)?;
        let mut p = ExprParser::new(stmt, self.lookup);
        let v = f(&mut p)?;
        p.finish()?;
        Ok(v)
    }

    fn poly(&self, key: &str) -> Result<Poly, ParseError> {
        self.with(key, |p| p.poly())
    }

    fn int(&self, key: &str) -> Result<u32, ParseError> {
        self.with(key, |p| {
            let (n, pos) = p.int()?;
            n.to_u32().ok_or_else(|| ParseError::syntax(pos, "integer too large"))
        })
    }

    fn indices(&self, key: &str, max: usize) -> Result<Vec<usize>, ParseError> {
        let stmt = self.get(key)?;
        self.with(key, |p| p.index_vector())?
            .into_iter()
            .map(|(i, pos)| {
                if i == 0 || i > max {
                    Err(ParseError::at(pos, ParseErrorKind::IndexOutOfRange { key: stmt.key.clone(), index: i, max }))
                } else {
                    Ok(i - 1)
                }
            })
            .collect()
    }

    fn matrix(&self, key: &str, n: usize) -> Result<PolyMatrix<Rational>, ParseError> {
        let rows = self.with(key, |p| p.poly_matrix())?;
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(ParseError::at(self.get(key)?.pos, ParseErrorKind::Invalid(format!("{key} must be {n}x{n}"))));
        }
        Ok(PolyMatrix::from_rows(rows))
    }

    fn indexed<T>(
        &self,
        key: &str,
        count: usize,
        f: impl Fn(&Self, &str) -> Result<T, ParseError>,
    ) -> Result<Vec<T>, ParseError> {
        (1..=count).map(|i| f(self, &format!("{key}[{i}]"))).collect()
    }
}

pub fn parse_presentation(text: &str) -> Result<SmoothPresentation<Rational>, ParseError> {
    let stripped = strip_sections(text)?;
    let stmts = statements(&stripped)?;
    let cert_keys = ["scaled_g_in_fh", "i_in_saturation", "units_at_origin", "taylor_congruence"];
    let known = [
        "vars", "J", "Yvars", "Tvars", "I", "f", "N", "yprime", "k", "c", "H", "G", "Gy", "d", "e", "h", "a", "Q", "g",
        "s", "s'", "perm",
    ];
    let map = by_key(stmts, &|k| known.contains(&k) || cert_keys.contains(&k))?;
    let none = |_: &str| None;
    let bare = Reader { map, lookup: &none };

    let xs = names(bare.get("vars")?)?;
    let ys = names(bare.get("Yvars")?)?;
    let ts = names(bare.get("Tvars")?)?;
    if ts.len() != ys.len() {
        return Err(ParseError::at(
            bare.get("Tvars")?.pos,
            ParseErrorKind::Invalid("one T variable per unknown".into()),
        ));
    }
    let universe = Arc::new(
        Universe::with_aux_names(&xs, &ys, &ts)
            .map_err(|e| ParseError::at(bare.get("vars").unwrap().pos, ParseErrorKind::Invalid(e.to_string())))?,
    );
    let u = universe.clone();
    let lookup = move |name: &str| u.lookup(name).filter(|&v| !u.name(v).starts_with('@'));
    let r = Reader { map: bare.map, lookup: &lookup };

    let j = match r.map.get("J") {
        Some(_) => r.with("J", |p| p.poly_list())?,
        None => vec![],
    };
    let ring = LocalRing::new(universe.clone(), j).map_err(|e| ParseError::invalid(format!("J: {e}")))?;
    let generators = r.with("I", |p| p.poly_list())?;
    let n = ys.len();
    let f_indices = r.indices("f", generators.len())?;
    let rr = f_indices.len();
    let perm = r.indices("perm", n)?;
    let mut sorted = perm.clone();
    sorted.sort_unstable();
    if sorted != (0..n).collect::<Vec<_>>() {
        return Err(ParseError::at(r.get("perm")?.pos, ParseErrorKind::Invalid("perm is not a permutation".into())));
    }
    let approx = r.with("yprime", |p| p.poly_vector())?;
    if approx.len() != n {
        return Err(ParseError::at(r.get("yprime")?.pos, ParseErrorKind::Invalid(format!("yprime needs {n} entries"))));
    }

    let a = r.indexed("a", rr, |r, key| r.with(key, |p| p.fraction()))?;
    let g_poly = r.indexed("g", rr, |r, key| {
        let expected = key.to_string();
        r.with(key, |p| {
            let (name, pos) = p.ident()?;
            p.expect(&Tok::LBracket)?;
            let (idx, ipos) = p.int()?;
            p.expect(&Tok::RBracket)?;
            if format!("{name}[{idx}]") != expected.replacen('g', "a", 1) {
                return Err(ParseError::syntax(
                    if name == "a" { ipos } else { pos },
                    format!("{expected} must start with {}", expected.replacen('g', "a", 1)),
                ));
            }
            if p.at_end() {
                Ok(Polynomial::zero())
            } else {
                p.poly()
            }
        })
    })?;

    for key in r.map.keys() {
        let base = key.split('[').next().unwrap_or("");
        if cert_keys.contains(&base) {
            let stmt = &r.map[key];
            r.with(key, |p| {
                let (status, pos) = p.ident()?;
                if status != "ok" && status != "failed" {
                    return Err(ParseError::syntax(pos, format!("{} must be ok or failed", stmt.label())));
                }
                Ok(())
            })?;
        }
    }

    let pres = SmoothPresentation {
        ring,
        f_indices,
        perm,
        multiplier: r.poly("N")?,
        approx,
        k: r.int("k")?,
        c: r.int("c")?,
        d: r.poly("d")?,
        e: r.int("e")?,
        h_matrix: r.matrix("H", n)?,
        g_matrix: r.matrix("G", n)?,
        g_at_approx: r.matrix("Gy", n)?,
        h: r.indexed("h", n, |r, key| r.poly(key))?,
        q: r.indexed("Q", rr, |r, key| r.poly(key))?,
        a,
        g_poly,
        s: r.poly("s")?,
        s_prime: r.poly("s'")?,
        warnings: vec![],
        generators,
    };
    if pres.k == 0 {
        return Err(ParseError::at(r.get("k")?.pos, ParseErrorKind::NonPositiveK));
    }
    if pres.e == 0 {
        return Err(ParseError::at(r.get("e")?.pos, ParseErrorKind::Invalid("e must be positive".into())));
    }
    for (label, stmt) in &r.map {
        let ok = match (stmt.key.as_str(), stmt.indices.as_slice()) {
            ("h", [i]) => (1..=n).contains(i),
            ("a" | "Q" | "g", [i]) => (1..=rr).contains(i),
            (key, []) => known.contains(&key) || cert_keys.contains(&key),
            (key, [_]) => cert_keys.contains(&key),
            _ => false,
        };
        if !ok {
            return Err(ParseError::at(stmt.pos, ParseErrorKind::UnknownKey(label.clone())));
        }
    }
    Ok(pres)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse_problem;
    use crate::neron::{desingularize, verify_presentation};

    fn build(text: &str) -> SmoothPresentation<Rational> {
        desingularize(&parse_problem(text).unwrap().to_input().unwrap()).unwrap()
    }

    const E1: &str = "vars x; Yvars Y; I = Y^2 - x^2; f = [1]; cols = [1]; N = 1; yprime = [x + x^3]; k = 1; c = 1;";

    #[test]
    fn e1_render_round_trip() {
        let p = build(E1);
        let report = verify_presentation(&p);
        let text = render_presentation(&p, Some(&report));
        assert!(text.contains("h[1] = Y - x - x^3 - (2*x + 2*x^3)*T;"));
        assert!(text.contains("s = 1 + 2*T;"));
        assert!(text.contains("g[1] = a[1] + T + T^2;"));
        assert!(is_presentation(&text));
        assert!(!is_presentation(E1));
        let back = parse_presentation(&text).unwrap();
        assert_eq!(render_presentation(&back, Some(&report)), text);
        assert!(verify_presentation(&back).passed());
    }

    #[test]
    fn permutation_is_recorded() {
        let text =
            "vars x; Yvars Y1, Y2; I = Y2^2 - x^2; f = [1]; cols = [2]; N = 1; yprime = [0, x + x^3]; k = 1; c = 1;";
        let rendered = render_presentation(&build(text), None);
        assert!(rendered.contains("PERM\nperm = [2, 1];"));
        assert_eq!(parse_presentation(&rendered).unwrap().perm, vec![1, 0]);
    }

    #[test]
    fn edited_presentation_fails_verification() {
        let text = render_presentation(&build(E1), None);
        let edited = text.replace("g[1] = a[1] + T + T^2;", "g[1] = a[1] + 1 + T + T^2;");
        let p = parse_presentation(&edited).unwrap();
        assert!(!verify_presentation(&p).kind_passed(CertificateKind::ScaledGInFH));
    }

    #[test]
    fn malformed_presentations() {
        let text = render_presentation(&build(E1), None);
        assert!(parse_presentation(&text.replace("UNITS\n", "")).is_err());
        assert!(parse_presentation(&text.replace("g[1] = a[1]", "g[1] = a[2]")).is_err());
        assert!(parse_presentation(&text.replace("perm = [1]", "perm = [2]")).is_err());
        let err = parse_presentation(&text.replace("s' = ", "t' = ")).unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::UnknownKey(_)));
    }
}
