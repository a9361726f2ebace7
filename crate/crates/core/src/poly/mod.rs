//! Exact multivariate polynomials, monomial orders, fractions with unit
//! denominators, polynomial matrices and Taylor expansion along a direction.

mod calculus;
mod fraction;
mod matrix;
mod monomial;
mod order;
mod polynomial;

pub use calculus::{taylor_split, TaylorSplit};
pub use fraction::{LocalFraction, NotAUnit};
pub use matrix::{NotSquare, PolyMatrix};
pub use monomial::{monomials_of_degree, Monomial, Var};
pub use order::{MonomialOrder, OrderKind};
pub use polynomial::{NotDivisible, Polynomial};
