use std::collections::BTreeMap;

use crate::poly::{LocalFraction, Monomial, MonomialOrder, Polynomial};
use crate::scalar::Scalar;
use crate::universe::{Universe, VarKind};

fn monomial_str(m: &Monomial, u: &Universe) -> String {
    m.pairs()
        .iter()
        .map(|&(v, e)| if e == 1 { u.name(v).to_string() } else { format!("{}^{e}", u.name(v)) })
        .collect::<Vec<_>>()
        .join("*")
}

/// `c*m` with `|c|` printed; the sign is handled by the caller.
fn abs_term<F: Scalar>(c: &F, m: &Monomial, u: &Universe) -> String {
    let a = c.abs();
    match (m.is_one(), a.is_one()) {
        (true, _) => a.to_string(),
        (false, true) => monomial_str(m, u),
        (false, false) => format!("{a}*{}", monomial_str(m, u)),
    }
}

fn join_signed(items: &[(bool, String)]) -> String {
    let mut out = String::new();
    for (i, (neg, s)) in items.iter().enumerate() {
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(s);
    }
    out
}

/// Unknowns first, then base-only terms, then everything else.
fn class(m: &Monomial, u: &Universe) -> u8 {
    if m.vars().any(|v| u.kind(v) == VarKind::Unknown) {
        0
    } else if m.is_one() {
        1
    } else {
        2
    }
}

/// Canonical text of a polynomial.
///
/// Terms are grouped by their monomial in the non-base variables; each
/// group's coefficient (a polynomial in the base variables) is listed by
/// ascending degree and parenthesized when it has several terms.
pub fn format_poly<F: Scalar>(p: &Polynomial<F>, u: &Universe) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut groups: BTreeMap<Monomial, Polynomial<F>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let global = m.restrict(|v| !u.is_local(v));
        let base = m.restrict(|v| u.is_local(v));
        groups.entry(global).or_default().add_term(base, c.clone());
    }
    let local = MonomialOrder::neg_degrevlex();
    let global = MonomialOrder::degrevlex();
    let mut keys: Vec<&Monomial> = groups.keys().collect();
    keys.sort_by(|a, b| {
        class(a, u).cmp(&class(b, u)).then(a.degree().cmp(&b.degree())).then_with(|| global.compare(b, a))
    });

    let mut items: Vec<(bool, String)> = Vec::new();
    for g in keys {
        let coeff = &groups[g];
        let terms = coeff.sorted_terms(&local);
        if g.is_one() {
            items.extend(terms.iter().map(|(m, c)| (c.is_negative(), abs_term(c, m, u))));
        } else if terms.len() == 1 {
            let (m, c) = &terms[0];
            items.push((c.is_negative(), abs_term(c, &m.mul(g), u)));
        } else {
            let neg = terms.iter().all(|(_, c)| c.is_negative());
            let inner: Vec<(bool, String)> =
                terms.iter().map(|(m, c)| (c.is_negative() != neg, abs_term(c, m, u))).collect();
            items.push((neg, format!("({})*{}", join_signed(&inner), monomial_str(g, u))));
        }
    }
    join_signed(&items)
}

/// `num` or `(num)/(den)`.
pub fn format_fraction<F: Scalar>(f: &LocalFraction<F>, u: &Universe) -> String {
    if f.denominator().is_one() {
        format_poly(f.numerator(), u)
    } else {
        format!("({})/({})", format_poly(f.numerator(), u), format_poly(f.denominator(), u))
    }
}

/// Appends `g` after a leading symbol, e.g. `a[1] + T + T^2`.
pub fn format_with_prefix<F: Scalar>(prefix: &str, p: &Polynomial<F>, u: &Universe) -> String {
    if p.is_zero() {
        return prefix.to_string();
    }
    let body = format_poly(p, u);
    match body.strip_prefix('-') {
        Some(rest) => format!("{prefix} - {rest}"),
        None => format!("{prefix} + {body}"),
    }
}

pub fn format_vector<F: Scalar>(v: &[Polynomial<F>], u: &Universe) -> String {
    format!("[{}]", v.iter().map(|p| format_poly(p, u)).collect::<Vec<_>>().join(", "))
}

pub fn format_indices(v: &[usize]) -> String {
    format!("[{}]", v.iter().map(|i| (i + 1).to_string()).collect::<Vec<_>>().join(", "))
}
