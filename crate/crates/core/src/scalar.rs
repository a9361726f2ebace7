//! Coefficient fields.
//!
//! Everything above this module is generic over a [`Scalar`]: any type that
//! behaves like a field under `num-traits`. The algorithms in this crate
//! decide ideal membership by exact cancellation, so only exact fields
//! (rationals) give meaningful answers; floating point types satisfy the
//! bound and are usable for plain polynomial arithmetic.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed};

/// A coefficient field.
pub trait Scalar:
    Num + Signed + Clone + Neg<Output = Self> + FromPrimitive + Debug + Display + Send + Sync + 'static
{
    /// Exact conversion of a small integer.
    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("scalar type cannot represent a small integer")
    }
}

impl<T> Scalar for T where
    T: Num + Signed + Clone + Neg<Output = T> + FromPrimitive + Debug + Display + Send + Sync + 'static
{
}

/// Arbitrary precision rationals, the coefficient field of the desingularization pipeline.
pub type Rational = BigRational;

/// Builds a rational `num / den` from machine integers.
pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}
