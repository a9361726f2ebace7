use std::sync::{Arc, OnceLock};

use thiserror::Error;

use super::mora::{self, Representation};
use crate::poly::{monomials_of_degree, LocalFraction, Monomial, MonomialOrder, Polynomial};
use crate::scalar::Scalar;
use crate::universe::Universe;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum IdealError<F: Scalar> {
    #[error("ideals live in different rings")]
    AmbientMismatch,
    #[error("element is not in the ideal")]
    NotInIdeal { normal_form: Polynomial<F> },
}

/// An ideal of `k[x]_(x)[Y, T, ...]`, the ring determined by its universe.
///
/// The standard basis is computed on first use and cached.
#[derive(Clone, Debug)]
pub struct IdealHandle<F> {
    universe: Arc<Universe>,
    gens: Vec<Polynomial<F>>,
    sb: OnceLock<Vec<Polynomial<F>>>,
}

impl<F: Scalar> IdealHandle<F> {
    pub fn new(universe: Arc<Universe>, gens: Vec<Polynomial<F>>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        IdealHandle { universe, gens, sb: OnceLock::new() }
    }

    /// `(x)^k` in the local variables.
    pub fn maximal_power(universe: Arc<Universe>, k: u32) -> Self {
        let gens =
            monomials_of_degree(&universe.local_vars(), k).into_iter().map(|m| Polynomial::term(F::one(), m)).collect();
        Self::new(universe, gens)
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn order(&self) -> MonomialOrder {
        self.universe.order()
    }

    /// The ideal with `extra` generators appended.
    pub fn extended(&self, extra: impl IntoIterator<Item = Polynomial<F>>) -> Self {
        let mut gens = self.gens.clone();
        gens.extend(extra);
        Self::new(self.universe.clone(), gens)
    }

    pub fn sum(&self, other: &Self) -> Self {
        self.extended(other.gens.iter().cloned())
    }

    pub fn standard_basis(&self) -> &[Polynomial<F>] {
        self.sb.get_or_init(|| mora::standard_basis(&self.gens, &self.order()))
    }

    pub fn normal_form(&self, p: &Polynomial<F>) -> Polynomial<F> {
        mora::weak_normal_form(p, self.standard_basis(), &self.order())
    }

    pub fn is_member(&self, p: &Polynomial<F>) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Membership of a fraction; its denominator is a unit.
    pub fn is_member_fraction(&self, f: &LocalFraction<F>) -> bool {
        self.is_member(f.numerator())
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.standard_basis().iter().any(|g| g.leading_monomial(&self.order()).is_some_and(Monomial::is_one))
    }

    /// First monomial of degree `k` in the local variables that is not a
    /// member, or `None` when `(x)^k` is contained in the ideal.
    pub fn power_witness(&self, k: u32) -> Option<Monomial> {
        monomials_of_degree(&self.universe.local_vars(), k)
            .into_iter()
            .find(|m| !self.is_member(&Polynomial::term(F::one(), m.clone())))
    }

    pub fn contains_power(&self, k: u32) -> bool {
        self.power_witness(k).is_none()
    }

    /// `(self : p)`, computed as `(self ∩ (p)) / p` with the intersection
    /// obtained by eliminating an auxiliary global variable.
    pub fn colon(&self, p: &Polynomial<F>) -> Self {
        assert!(!p.is_zero(), "colon by zero");
        let t = self.universe.elimination();
        let tp = Polynomial::var(t);
        let one_minus_t = &Polynomial::one() - &tp;
        let mut gens: Vec<Polynomial<F>> = self.gens.iter().map(|g| &tp * g).collect();
        gens.push(&one_minus_t * p);
        let sb = mora::standard_basis(&gens, &self.order());
        let quotients = sb
            .into_iter()
            .filter(|g| g.degree_in(t) == 0)
            .map(|g| g.exact_divide(p).expect("intersection with (p) is divisible by p"))
            .collect();
        Self::new(self.universe.clone(), quotients)
    }

    /// Equality of ideals in the localized ring.
    pub fn equals(&self, other: &Self) -> Result<bool, IdealError<F>> {
        if self.universe != other.universe {
            return Err(IdealError::AmbientMismatch);
        }
        Ok(self.contains_ideal(other) && other.contains_ideal(self))
    }

    pub fn contains_ideal(&self, other: &Self) -> bool {
        other.gens.iter().all(|g| self.is_member(g))
    }

    /// Cofactors `c_i` (with unit denominators) such that
    /// `p - sum c_i * gens_i` lies in this ideal.
    pub fn represent(&self, p: &Polynomial<F>, gens: &[Polynomial<F>]) -> Result<Vec<LocalFraction<F>>, IdealError<F>> {
        let mut all = gens.to_vec();
        all.extend(self.gens.iter().cloned());
        let rep = mora::represent(p, &all, &self.order());
        if !rep.remainder.is_zero() {
            return Err(IdealError::NotInIdeal { normal_form: rep.remainder });
        }
        Ok(rep.cofactors[..gens.len()]
            .iter()
            .map(|c| LocalFraction::new(c.clone(), rep.unit.clone()).expect("leading monomial 1 means a unit"))
            .collect())
    }

    /// A checkable membership certificate for `p` relative to the generators.
    pub fn certify(&self, p: &Polynomial<F>) -> Representation<F> {
        mora::represent(p, &self.gens, &self.order())
    }

    /// Membership of `p` after inverting every element of `units`, decided
    /// by adjoining `u` together with `1 - u * prod(units)`.
    pub fn saturation_contains(&self, p: &Polynomial<F>, units: &[Polynomial<F>]) -> bool {
        self.rabinowitsch(units).is_member(p)
    }

    /// The ideal `self + (1 - u * prod(units))` in the ring with `u` adjoined.
    pub fn rabinowitsch(&self, units: &[Polynomial<F>]) -> Self {
        let u = Polynomial::var(self.universe.rabinowitsch());
        let prod = units.iter().fold(Polynomial::one(), |acc, s| &acc * s);
        self.extended([&Polynomial::one() - &(&u * &prod)])
    }
}
