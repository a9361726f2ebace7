use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use super::polynomial::Polynomial;
use crate::scalar::Scalar;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("denominator has zero constant term and is not a unit at the origin")]
pub struct NotAUnit;

/// An element `num / den` of the localization at the origin.
///
/// Invariant: `den` has constant term exactly 1 and the numerator and
/// denominator share no monomial factor. Fractions are otherwise kept
/// unreduced, so equality is decided by [`LocalFraction::cross_eq`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LocalFraction<F> {
    num: Polynomial<F>,
    den: Polynomial<F>,
}

impl<F: Scalar> LocalFraction<F> {
    pub fn new(num: Polynomial<F>, den: Polynomial<F>) -> Result<Self, NotAUnit> {
        let (num, den) = Self::normalize_parts(num, den)?;
        Ok(LocalFraction { num, den })
    }

    pub fn from_poly(p: Polynomial<F>) -> Self {
        LocalFraction { num: p, den: Polynomial::one() }
    }

    pub fn zero() -> Self {
        Self::from_poly(Polynomial::zero())
    }

    fn normalize_parts(num: Polynomial<F>, den: Polynomial<F>) -> Result<(Polynomial<F>, Polynomial<F>), NotAUnit> {
        if den.is_zero() {
            return Err(NotAUnit);
        }
        if num.is_zero() {
            return Ok((num, Polynomial::one()));
        }
        let common = num.monomial_content().gcd(&den.monomial_content());
        let (num, den) =
            if common.is_one() { (num, den) } else { (num.div_monomial(&common), den.div_monomial(&common)) };
        let c0 = den.constant_term();
        if c0.is_zero() {
            return Err(NotAUnit);
        }
        let inv = F::one() / c0;
        Ok((num.scale(&inv), den.scale(&inv)))
    }

    pub fn numerator(&self) -> &Polynomial<F> {
        &self.num
    }

    pub fn denominator(&self) -> &Polynomial<F> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// True when the denominator is the constant 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Equality as elements of the localization (no quotient by an ideal).
    pub fn cross_eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }

    pub fn scale_poly(&self, p: &Polynomial<F>) -> Self {
        LocalFraction::new(&self.num * p, self.den.clone()).expect("denominator stays a unit")
    }
}

impl<F: Scalar> Add for &LocalFraction<F> {
    type Output = LocalFraction<F>;
    fn add(self, rhs: Self) -> LocalFraction<F> {
        if self.den == rhs.den {
            return LocalFraction::new(&self.num + &rhs.num, self.den.clone()).expect("unit");
        }
        LocalFraction::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
            .expect("product of units is a unit")
    }
}

impl<F: Scalar> Sub for &LocalFraction<F> {
    type Output = LocalFraction<F>;
    fn sub(self, rhs: Self) -> LocalFraction<F> {
        self + &(-rhs)
    }
}

impl<F: Scalar> Neg for &LocalFraction<F> {
    type Output = LocalFraction<F>;
    fn neg(self) -> LocalFraction<F> {
        LocalFraction { num: -&self.num, den: self.den.clone() }
    }
}

impl<F: Scalar> Mul for &LocalFraction<F> {
    type Output = LocalFraction<F>;
    fn mul(self, rhs: Self) -> LocalFraction<F> {
        LocalFraction::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("product of units is a unit")
    }
}
