use std::collections::BTreeMap;
use std::sync::Arc;

use super::LiftError;
use crate::local::LocalRing;
use crate::poly::{monomials_of_degree, LocalFraction, Monomial, MonomialOrder, Polynomial, Var};
use crate::scalar::Scalar;

#[derive(Debug)]
struct Inner<F> {
    ring: LocalRing<F>,
    order: u32,
    local: MonomialOrder,
    basis: Vec<Monomial>,
    reducers: Vec<Polynomial<F>>,
}

/// `k[x]/(J + (x)^D)`. Elements are polynomials in `x` kept in canonical
/// form: every term is a standard monomial of degree below `D`.
#[derive(Clone, Debug)]
pub struct TruncatedRing<F> {
    inner: Arc<Inner<F>>,
}

impl<F: Scalar> TruncatedRing<F> {
    pub fn new(ring: LocalRing<F>, order: u32) -> Self {
        let local = MonomialOrder::neg_degrevlex();
        let reducers: Vec<Polynomial<F>> = ring
            .maximal_power(order)
            .standard_basis()
            .iter()
            .map(|g| {
                let (_, c) = g.leading_term(&local).expect("nonzero");
                g.scale(&(F::one() / c.clone()))
            })
            .collect();
        let xs = ring.universe().local_vars();
        let leads: Vec<Monomial> = reducers.iter().map(|g| g.leading_monomial(&local).unwrap().clone()).collect();
        let mut basis: Vec<Monomial> = (0..order)
            .flat_map(|deg| monomials_of_degree(&xs, deg))
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .collect();
        basis.sort_by(|a, b| local.compare(b, a));
        TruncatedRing { inner: Arc::new(Inner { ring, order, local, basis, reducers }) }
    }

    pub fn base(&self) -> &LocalRing<F> {
        &self.inner.ring
    }

    /// The truncation order `D`.
    pub fn order(&self) -> u32 {
        self.inner.order
    }

    /// Standard monomials, largest first in the local order.
    pub fn basis(&self) -> &[Monomial] {
        &self.inner.basis
    }

    pub fn dimension(&self) -> usize {
        self.inner.basis.len()
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
    }

    /// Canonical form of a polynomial in `x`.
    pub fn reduce(&self, p: &Polynomial<F>) -> Polynomial<F> {
        let d = self.inner.order;
        let local = &self.inner.local;
        let mut work = p.truncate_degree(d);
        let mut out = Polynomial::zero();
        // each step removes the leading term and only adds smaller ones
        while let Some((m, c)) = work.leading_term(local).map(|(m, c)| (m.clone(), c.clone())) {
            let reducer = self.inner.reducers.iter().find_map(|g| {
                let lm = g.leading_monomial(local).unwrap();
                m.div(lm).map(|q| (g, q))
            });
            match reducer {
                Some((g, q)) => work -= g.mul_term(&c, &q).truncate_degree(d),
                None => {
                    out.add_term(m.clone(), c);
                    work = work.filter_terms(|t| t != &m);
                }
            }
        }
        out
    }

    pub fn mul(&self, a: &Polynomial<F>, b: &Polynomial<F>) -> Polynomial<F> {
        let d = self.inner.order;
        let mut prod = Polynomial::zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let m = ma.mul(mb);
                if m.degree() < d {
                    prod.add_term(m, ca.clone() * cb.clone());
                }
            }
        }
        self.reduce(&prod)
    }

    pub fn pow(&self, a: &Polynomial<F>, e: u32) -> Polynomial<F> {
        let mut out = self.reduce(&Polynomial::one());
        for _ in 0..e {
            out = self.mul(&out, a);
        }
        out
    }

    /// Largest `m <= D` with `a ∈ (x)^m + J`.
    pub fn valuation(&self, a: &Polynomial<F>) -> u32 {
        self.reduce(a).order().unwrap_or(self.inner.order)
    }

    pub fn is_unit(&self, a: &Polynomial<F>) -> bool {
        !self.reduce(a).constant_term().is_zero()
    }

    /// Inverse of a unit by the geometric series.
    pub fn inverse(&self, a: &Polynomial<F>) -> Result<Polynomial<F>, LiftError> {
        let a = self.reduce(a);
        let c0 = a.constant_term();
        if c0.is_zero() {
            return Err(LiftError::NotAUnit);
        }
        let inv0 = F::one() / c0.clone();
        // a = c0 (1 - w)
        let w = (&Polynomial::constant(c0) - &a).scale(&inv0);
        let mut acc = Polynomial::one();
        for _ in 0..self.inner.order {
            acc = &Polynomial::one() + &self.mul(&w, &acc);
        }
        Ok(self.reduce(&acc.scale(&inv0)))
    }

    pub fn truncate_fraction(&self, f: &LocalFraction<F>) -> Result<Polynomial<F>, LiftError> {
        let inv = self.inverse(f.denominator())?;
        Ok(self.mul(&self.reduce(f.numerator()), &inv))
    }

    /// Image of `p` after binding non-base variables to ring elements.
    /// Base variables stay as they are; every unbound non-base variable
    /// must be absent from `p`.
    pub fn eval(&self, p: &Polynomial<F>, bindings: &BTreeMap<Var, Polynomial<F>>) -> Polynomial<F> {
        let u = self.inner.ring.universe();
        let mut powers: BTreeMap<(Var, u32), Polynomial<F>> = BTreeMap::new();
        let mut out = Polynomial::zero();
        for (m, c) in p.terms() {
            let base = m.restrict(|v| u.is_local(v));
            let mut acc = self.reduce(&Polynomial::term(c.clone(), base));
            for &(v, e) in m.pairs() {
                if u.is_local(v) || acc.is_zero() {
                    continue;
                }
                let value = bindings.get(&v).unwrap_or_else(|| panic!("variable {} is unbound", u.name(v)));
                let pw = powers.entry((v, e)).or_insert_with(|| self.pow(value, e)).clone();
                acc = self.mul(&acc, &pw);
            }
            out += acc;
        }
        self.reduce(&out)
    }
}

/// Entries of one truncated ring.
#[derive(Clone, Debug)]
pub struct TruncatedVector<F> {
    ring: TruncatedRing<F>,
    entries: Vec<Polynomial<F>>,
}

impl<F: Scalar> TruncatedVector<F> {
    /// Reduces every entry into `ring`.
    pub fn new(ring: &TruncatedRing<F>, entries: Vec<Polynomial<F>>) -> Self {
        let entries = entries.iter().map(|e| ring.reduce(e)).collect();
        TruncatedVector { ring: ring.clone(), entries }
    }

    pub fn zeros(ring: &TruncatedRing<F>, len: usize) -> Self {
        TruncatedVector { ring: ring.clone(), entries: vec![Polynomial::zero(); len] }
    }

    pub fn ring(&self) -> &TruncatedRing<F> {
        &self.ring
    }

    pub fn entries(&self) -> &[Polynomial<F>] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Polynomial<F>> {
        self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Minimum valuation of the entries; `D` for the empty or zero vector.
    pub fn valuation(&self) -> u32 {
        self.entries.iter().map(|e| self.ring.valuation(e)).min().unwrap_or(self.ring.order())
    }

    /// Agreement order `valuation(self - other)`.
    pub fn agreement(&self, other: &Self) -> u32 {
        assert_eq!(self.len(), other.len(), "length mismatch");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.ring.valuation(&(a - b)))
            .min()
            .unwrap_or(self.ring.order())
    }
}

impl<F: Scalar> PartialEq for TruncatedVector<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring) && self.entries == other.entries
    }
}
