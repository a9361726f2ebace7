use std::sync::Arc;

use thiserror::Error;

use super::ideal::IdealHandle;
use crate::poly::{LocalFraction, Polynomial};
use crate::scalar::Scalar;
use crate::universe::Universe;

pub const DEFAULT_ANNIHILATOR_CAP: u32 = 64;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("generator {index} of J is not in the maximal ideal (x)")]
    UnitGenerator { index: usize },
    #[error("generator {index} of J involves variables outside x")]
    NotInBase { index: usize },
    #[error("annihilator chain did not stabilize within {cap} steps")]
    ChainDidNotStabilize { cap: u32 },
}

/// `A = k[x]_(x) / J`.
#[derive(Clone, Debug)]
pub struct LocalRing<F> {
    universe: Arc<Universe>,
    j: IdealHandle<F>,
}

impl<F: Scalar> LocalRing<F> {
    pub fn new(universe: Arc<Universe>, j_gens: Vec<Polynomial<F>>) -> Result<Self, RingError> {
        for (index, g) in j_gens.iter().enumerate() {
            if !g.only_in(|v| universe.is_local(v)) {
                return Err(RingError::NotInBase { index });
            }
            if !g.constant_term().is_zero() {
                return Err(RingError::UnitGenerator { index });
            }
        }
        let j = IdealHandle::new(universe.clone(), j_gens);
        Ok(LocalRing { universe, j })
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn ideal(&self) -> &IdealHandle<F> {
        &self.j
    }

    pub fn j_generators(&self) -> &[Polynomial<F>] {
        self.j.generators()
    }

    /// The ideal `(gens) + J` in the ambient ring of the universe.
    pub fn ideal_with(&self, gens: impl IntoIterator<Item = Polynomial<F>>) -> IdealHandle<F> {
        IdealHandle::new(self.universe.clone(), gens.into_iter().collect()).sum(&self.j)
    }

    /// `(x)^k + J`.
    pub fn maximal_power(&self, k: u32) -> IdealHandle<F> {
        IdealHandle::maximal_power(self.universe.clone(), k).sum(&self.j)
    }

    pub fn is_zero(&self, p: &Polynomial<F>) -> bool {
        self.j.is_member(p)
    }

    /// The least `e >= 1` with `(J : d^e) = (J : d^(e+1))`.
    pub fn annihilator_exponent(&self, d: &LocalFraction<F>) -> Result<u32, RingError> {
        self.annihilator_exponent_capped(d, DEFAULT_ANNIHILATOR_CAP)
    }

    pub fn annihilator_exponent_capped(&self, d: &LocalFraction<F>, cap: u32) -> Result<u32, RingError> {
        let d = d.numerator();
        if self.j.generators().is_empty() {
            // a localized polynomial ring is a domain
            return Ok(1);
        }
        let mut power = d.clone();
        let mut current = self.j.colon(&power);
        for e in 1..=cap {
            power = &power * d;
            let next = self.j.colon(&power);
            // the chain ascends, so one inclusion suffices
            if current.contains_ideal(&next) {
                return Ok(e);
            }
            current = next;
        }
        Err(RingError::ChainDidNotStabilize { cap })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;
    use crate::scalar::Rational;

    type P = Polynomial<Rational>;

    fn v(i: u32) -> P {
        P::var(Var(i))
    }

    fn ring(j: Vec<P>) -> LocalRing<Rational> {
        let u = Arc::new(Universe::new(&["x", "z"], &[] as &[&str]).unwrap());
        LocalRing::new(u, j).unwrap()
    }

    #[test]
    fn exponent_in_a_domain_is_one() {
        let r = ring(vec![]);
        let d = &(&P::from_int(2) * &v(0)) + &(&P::from_int(2) * &v(0).pow(3));
        assert_eq!(r.annihilator_exponent(&LocalFraction::from_poly(d)), Ok(1));
    }

    #[test]
    fn exponent_examples() {
        let (x, z) = (v(0), v(1));
        let r = ring(vec![z.pow(2), &z * &x]);
        assert_eq!(r.annihilator_exponent(&LocalFraction::from_poly(x.clone())), Ok(1));
        let r = ring(vec![z.pow(3), &z * &x]);
        assert_eq!(r.annihilator_exponent(&LocalFraction::from_poly(&x + &z)), Ok(2));
    }

    #[test]
    fn cap_is_reported() {
        let (x, z) = (v(0), v(1));
        let r = ring(vec![z.pow(3), &z * &x]);
        assert_eq!(
            r.annihilator_exponent_capped(&LocalFraction::from_poly(&x + &z), 1),
            Err(RingError::ChainDidNotStabilize { cap: 1 })
        );
    }

    #[test]
    fn rejects_unit_generators() {
        let u = Arc::new(Universe::new(&["x"], &[] as &[&str]).unwrap());
        assert_eq!(LocalRing::new(u, vec![&v(0) + &P::one()]).err(), Some(RingError::UnitGenerator { index: 0 }));
    }
}
