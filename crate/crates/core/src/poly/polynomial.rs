use std::collections::{BTreeMap, BTreeSet};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use thiserror::Error;

use super::monomial::{Monomial, Var};
use super::order::MonomialOrder;
use crate::scalar::Scalar;

/// A sparse multivariate polynomial with exact coefficients.
///
/// Terms are keyed by monomial; zero coefficients are never stored. The map
/// order is only a storage order, use [`Polynomial::leading_term`] or
/// [`Polynomial::sorted_terms`] for anything order dependent.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Polynomial<F> {
    terms: BTreeMap<Monomial, F>,
}

#[derive(Error, Debug, Clone, PartialEq)]
#[error("polynomial division is not exact")]
pub struct NotDivisible<F: Scalar> {
    pub remainder: Polynomial<F>,
}

impl<F: Scalar> Default for Polynomial<F> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<F: Scalar> Polynomial<F> {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(F::from_int(c))
    }

    pub fn var(v: Var) -> Self {
        Self::term(F::one(), Monomial::var(v))
    }

    pub fn term(c: F, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, F)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().clone() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.constant_term().is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, F)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> F {
        self.terms.get(m).cloned().unwrap_or_else(F::zero)
    }

    pub fn constant_term(&self) -> F {
        self.coefficient(&Monomial::one())
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Smallest total degree of a term; `None` for zero.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    /// True when every variable that occurs satisfies `pred`.
    pub fn only_in(&self, pred: impl Fn(Var) -> bool) -> bool {
        self.terms.keys().all(|m| m.vars().all(&pred))
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<(&Monomial, &F)> {
        self.terms.iter().max_by(|a, b| order.compare(a.0, b.0))
    }

    pub fn leading_monomial(&self, order: &MonomialOrder) -> Option<&Monomial> {
        self.leading_term(order).map(|(m, _)| m)
    }

    /// Terms sorted from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: &MonomialOrder) -> Vec<(Monomial, F)> {
        let mut v: Vec<(Monomial, F)> = self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        v.sort_by(|a, b| order.compare(&b.0, &a.0));
        v
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect() }
    }

    pub fn mul_term(&self, c: &F, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(n, a)| (n.mul(m), a.clone() * c.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative.
    pub fn derivative(&self, v: Var) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e == 0 {
                continue;
            }
            let (rest, _) = m.without(v);
            let m2 = rest.mul(&Monomial::var_pow(v, e - 1));
            out.add_term(m2, c.clone() * F::from_int(e as i64));
        }
        out
    }

    /// Replaces each bound variable by a polynomial; unbound variables pass through.
    pub fn substitute(&self, bindings: &BTreeMap<Var, Polynomial<F>>) -> Self {
        let mut powers: BTreeMap<(Var, u32), Polynomial<F>> = BTreeMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut free = Vec::new();
            let mut acc = Self::one();
            for &(v, e) in m.pairs() {
                match bindings.get(&v) {
                    Some(b) => {
                        let p = powers.entry((v, e)).or_insert_with(|| b.pow(e));
                        acc = &acc * &*p;
                    }
                    None => free.push((v, e)),
                }
            }
            out += acc.mul_term(c, &Monomial::from_pairs(free));
        }
        out
    }

    /// Coefficients with respect to powers of `v`: `self = sum_j v^j * out[j]`.
    pub fn coefficients_in(&self, v: Var) -> BTreeMap<u32, Polynomial<F>> {
        let mut out: BTreeMap<u32, Polynomial<F>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (rest, e) = m.without(v);
            out.entry(e).or_default().add_term(rest, c.clone());
        }
        out
    }

    /// The part of `self` made of terms accepted by `keep`.
    pub fn filter_terms(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        Polynomial { terms: self.terms.iter().filter(|(m, _)| keep(m)).map(|(m, c)| (m.clone(), c.clone())).collect() }
    }

    /// Drops every term of total degree at least `degree`.
    pub fn truncate_degree(&self, degree: u32) -> Self {
        self.filter_terms(|m| m.degree() < degree)
    }

    /// Exact quotient `self / q` in the polynomial ring.
    ///
    /// Divides with respect to degrevlex on all variables; a nonzero
    /// remainder is returned as the witness of non-divisibility.
    pub fn exact_divide(&self, q: &Polynomial<F>) -> Result<Polynomial<F>, NotDivisible<F>> {
        assert!(!q.is_zero(), "division by the zero polynomial");
        let order = MonomialOrder::degrevlex();
        let (lm, lc) = {
            let (m, c) = q.leading_term(&order).expect("nonzero");
            (m.clone(), c.clone())
        };
        let mut rem = self.clone();
        let mut quot = Self::zero();
        let mut residue = Self::zero();
        while let Some((m, c)) = rem.leading_term(&order).map(|(m, c)| (m.clone(), c.clone())) {
            match m.div(&lm) {
                Some(t) => {
                    let k = c / lc.clone();
                    rem -= q.mul_term(&k, &t);
                    quot.add_term(t, k);
                }
                None => {
                    rem.terms.remove(&m);
                    residue.add_term(m, c);
                }
            }
        }
        if residue.is_zero() {
            Ok(quot)
        } else {
            Err(NotDivisible { remainder: residue })
        }
    }

    /// Largest monomial dividing every term (the monomial content).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(first.clone(), |acc, m| acc.gcd(m)),
        }
    }

    /// Divides every term by a monomial known to divide it.
    pub fn div_monomial(&self, m: &Monomial) -> Self {
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(n, c)| (n.div(m).expect("monomial does not divide every term"), c.clone()))
                .collect(),
        }
    }

    /// Evaluates every variable to a scalar; missing variables count as zero.
    pub fn evaluate(&self, values: &BTreeMap<Var, F>) -> F {
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                let base = values.get(&v).cloned().unwrap_or_else(F::zero);
                for _ in 0..e {
                    t = t * base.clone();
                }
            }
            acc = acc + t;
        }
        acc
    }
}

impl<F: Scalar> From<Var> for Polynomial<F> {
    fn from(v: Var) -> Self {
        Polynomial::var(v)
    }
}

impl<F: Scalar> AddAssign<Polynomial<F>> for Polynomial<F> {
    fn add_assign(&mut self, rhs: Polynomial<F>) {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl<F: Scalar> AddAssign<&Polynomial<F>> for Polynomial<F> {
    fn add_assign(&mut self, rhs: &Polynomial<F>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<F: Scalar> SubAssign<Polynomial<F>> for Polynomial<F> {
    fn sub_assign(&mut self, rhs: Polynomial<F>) {
        for (m, c) in rhs.terms {
            self.add_term(m, -c);
        }
    }
}

impl<F: Scalar> SubAssign<&Polynomial<F>> for Polynomial<F> {
    fn sub_assign(&mut self, rhs: &Polynomial<F>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<F: Scalar> Add for Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<F: Scalar> Add for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn add(self, rhs: Self) -> Polynomial<F> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<F: Scalar> Sub for Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl<F: Scalar> Sub for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn sub(self, rhs: Self) -> Polynomial<F> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<F: Scalar> Neg for Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Self {
        Polynomial { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<F: Scalar> Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        -self.clone()
    }
}

impl<F: Scalar> Mul for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Polynomial<F> {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), c.clone() * d.clone());
            }
        }
        out
    }
}

impl<F: Scalar> Mul for Polynomial<F> {
    type Output = Polynomial<F>;
    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }
}
