use std::collections::BTreeMap;

use super::monomial::Var;
use super::polynomial::Polynomial;
use crate::scalar::Scalar;

/// Expansion of `p(y + D*L)` by powers of a marker variable `D`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TaylorSplit<F> {
    /// `p(y)`.
    pub value: Polynomial<F>,
    /// Coefficient of `D^1`, the directional derivative along `L`.
    pub linear: Polynomial<F>,
    /// Coefficients of `D^j` for `j >= 2`; absent degrees are zero.
    pub higher: BTreeMap<u32, Polynomial<F>>,
}

impl<F: Scalar> TaylorSplit<F> {
    /// Reassembles `value + D*linear + sum_j D^j * higher[j]`.
    pub fn recombine(&self, marker: Var) -> Polynomial<F> {
        let d = Polynomial::var(marker);
        let mut out = &self.value + &(&d * &self.linear);
        for (&j, b) in &self.higher {
            out += &d.pow(j) * b;
        }
        out
    }

    /// `sum_j w^(j-2) * higher[j]` for a given weight `w`.
    pub fn weighted_tail(&self, weight: &Polynomial<F>) -> Polynomial<F> {
        let mut out = Polynomial::zero();
        for (&j, b) in &self.higher {
            out += &weight.pow(j - 2) * b;
        }
        out
    }
}

/// Substitutes `v -> base_v + D * dir_v` for each `(v, base_v, dir_v)` and
/// collects the result by powers of `marker`.
pub fn taylor_split<F: Scalar>(
    p: &Polynomial<F>,
    point: &[(Var, Polynomial<F>)],
    directions: &[Polynomial<F>],
    marker: Var,
) -> TaylorSplit<F> {
    assert_eq!(point.len(), directions.len(), "one direction per variable");
    assert!(p.degree_in(marker) == 0, "marker variable occurs in p");
    let d = Polynomial::var(marker);
    let bindings: BTreeMap<Var, Polynomial<F>> =
        point.iter().zip(directions).map(|((v, base), dir)| (*v, base + &(&d * dir))).collect();
    let mut by_degree = p.substitute(&bindings).coefficients_in(marker);
    let value = by_degree.remove(&0).unwrap_or_default();
    let linear = by_degree.remove(&1).unwrap_or_default();
    TaylorSplit { value, linear, higher: by_degree }
}
