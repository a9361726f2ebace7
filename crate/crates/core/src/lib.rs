//! Uniform General Néron Desingularization over one-dimensional local rings
//! `A = k[x]_(x)/J`.
//!
//! Given `B = A[Y]/I`, a subsystem `f` of `I`, a minor of its Jacobian, a
//! multiplier `N` in `((f):I)` and an approximate solution `y'`, the crate
//! builds the standard smooth `A`-algebra `C = (A[Y,T]/(I,g,h))_{ss'}`
//! through which every solution close enough to `y'` factors, certifies the
//! identities the construction rests on, and lifts or parametrizes solutions
//! at finite precision.
//!
//! The algebra is generic over the coefficient field ([`Scalar`]); the
//! aliases below fix it to exact rationals, which is what the pipeline and
//! the command-line tool use.

pub mod io;
pub mod lifting;
pub mod local;
pub mod neron;
pub mod poly;
pub mod scalar;
pub mod universe;

pub use scalar::{rational, Rational, Scalar};
pub use universe::{Universe, VarKind};

pub type Poly = poly::Polynomial<Rational>;
pub type Fraction = poly::LocalFraction<Rational>;
pub type Matrix = poly::PolyMatrix<Rational>;
pub type Ideal = local::IdealHandle<Rational>;
pub type Ring = local::LocalRing<Rational>;

pub type Input = neron::DesingularizationInput<Rational>;
pub type Presentation = neron::SmoothPresentation<Rational>;
pub type Truncation = lifting::TruncatedRing<Rational>;
