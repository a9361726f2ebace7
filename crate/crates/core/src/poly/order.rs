//! Monomial orders.
//!
//! Three kinds are supported: the global degree reverse lexicographic order,
//! its local counterpart (lower total degree ranks higher, so `1` is the
//! largest monomial) and a product order in which a block of global variables
//! is compared first and the remaining variables are compared locally.
//! Polynomials whose leading monomial is `1` are exactly the units of the
//! localization the order realizes.

use std::cmp::Ordering;

use super::monomial::{Monomial, Var};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum OrderKind {
    DegRevLex,
    NegDegRevLex,
    /// Global block (degrevlex) first, local block (negative degrevlex) second.
    Product,
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialOrder {
    kind: OrderKind,
    global: Vec<Var>,
}

impl MonomialOrder {
    pub fn degrevlex() -> Self {
        MonomialOrder { kind: OrderKind::DegRevLex, global: Vec::new() }
    }

    pub fn neg_degrevlex() -> Self {
        MonomialOrder { kind: OrderKind::NegDegRevLex, global: Vec::new() }
    }

    pub fn product<I: IntoIterator<Item = Var>>(global: I) -> Self {
        let mut global: Vec<Var> = global.into_iter().collect();
        global.sort();
        global.dedup();
        MonomialOrder { kind: OrderKind::Product, global }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn is_global(&self, v: Var) -> bool {
        match self.kind {
            OrderKind::DegRevLex => true,
            OrderKind::NegDegRevLex => false,
            OrderKind::Product => self.global.binary_search(&v).is_ok(),
        }
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::DegRevLex => a.degree().cmp(&b.degree()).then_with(|| revlex_tie(a, b, |_| true)),
            OrderKind::NegDegRevLex => b.degree().cmp(&a.degree()).then_with(|| revlex_tie(a, b, |_| true)),
            OrderKind::Product => {
                let g = |v: Var| self.is_global(v);
                let l = |v: Var| !self.is_global(v);
                a.degree_in(g)
                    .cmp(&b.degree_in(g))
                    .then_with(|| revlex_tie(a, b, g))
                    .then_with(|| b.degree_in(l).cmp(&a.degree_in(l)))
                    .then_with(|| revlex_tie(a, b, l))
            }
        }
    }

    /// Largest of the given monomials.
    pub fn max<'a, I: IntoIterator<Item = &'a Monomial>>(&self, ms: I) -> Option<&'a Monomial> {
        ms.into_iter().max_by(|a, b| self.compare(a, b))
    }
}

/// Reverse-lexicographic tie-break: at the highest-indexed variable where the
/// exponents differ, the monomial with the smaller exponent is larger.
fn revlex_tie(a: &Monomial, b: &Monomial, pred: impl Fn(Var) -> bool) -> Ordering {
    let mut ia = a.pairs().iter().rev().filter(|&&(v, _)| pred(v)).peekable();
    let mut ib = b.pairs().iter().rev().filter(|&&(v, _)| pred(v)).peekable();
    loop {
        match (ia.peek().copied(), ib.peek().copied()) {
            (None, None) => return Ordering::Equal,
            // b has a positive exponent where a has none
            (None, Some(_)) => return Ordering::Greater,
            (Some(_), None) => return Ordering::Less,
            (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                Ordering::Greater => return Ordering::Less,
                Ordering::Less => return Ordering::Greater,
                Ordering::Equal => {
                    if ea != eb {
                        return eb.cmp(&ea);
                    }
                    ia.next();
                    ib.next();
                }
            },
        }
    }
}
