use std::collections::BTreeSet;
use std::sync::Arc;

use thiserror::Error;

use crate::local::LocalRing;
use crate::poly::{Polynomial, Var};
use crate::scalar::Scalar;
use crate::universe::Universe;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum InputError {
    #[error("the system f must select at least one generator")]
    EmptySystem,
    #[error("r = {r} exceeds the number of unknowns n = {n}")]
    TooManyEquations { r: usize, n: usize },
    #[error("{what} index {index} is out of range (1..={max})")]
    OutOfRange { what: &'static str, index: usize, max: usize },
    #[error("{what} index {index} is repeated")]
    Duplicate { what: &'static str, index: usize },
    #[error("f selects {f} generators but the minor has {cols} columns")]
    MinorShape { f: usize, cols: usize },
    #[error("y' has {got} entries, expected {n}")]
    ApproxLength { got: usize, n: usize },
    #[error("{what} may only involve {allowed}")]
    Variables { what: String, allowed: &'static str },
    #[error("k must be positive")]
    ZeroK,
}

/// `B = A[Y]/I` with `I` given by generators in `x` and `Y`.
#[derive(Clone, Debug)]
pub struct AlgebraPresentation<F> {
    pub ring: LocalRing<F>,
    pub generators: Vec<Polynomial<F>>,
}

impl<F: Scalar> AlgebraPresentation<F> {
    pub fn universe(&self) -> &Arc<Universe> {
        self.ring.universe()
    }

    pub fn unknowns(&self) -> Vec<Var> {
        self.universe().unknown_vars()
    }
}

/// Everything the construction needs: the algebra, the chosen system
/// `f = (f_i : i in f_indices)`, the columns of the minor `M`, the
/// multiplier `N`, the approximate solution `y'` and the integers `k`, `c`.
/// Indices are zero-based.
#[derive(Clone, Debug)]
pub struct DesingularizationInput<F> {
    pub algebra: AlgebraPresentation<F>,
    pub f_indices: Vec<usize>,
    pub minor_cols: Vec<usize>,
    pub multiplier: Polynomial<F>,
    pub approx: Vec<Polynomial<F>>,
    pub k: u32,
    pub c: u32,
}

fn check_indices(what: &'static str, idx: &[usize], max: usize) -> Result<(), InputError> {
    let mut seen = BTreeSet::new();
    for &i in idx {
        if i >= max {
            return Err(InputError::OutOfRange { what, index: i + 1, max });
        }
        if !seen.insert(i) {
            return Err(InputError::Duplicate { what, index: i + 1 });
        }
    }
    Ok(())
}

impl<F: Scalar> DesingularizationInput<F> {
    pub fn new(
        algebra: AlgebraPresentation<F>,
        f_indices: Vec<usize>,
        minor_cols: Vec<usize>,
        multiplier: Polynomial<F>,
        approx: Vec<Polynomial<F>>,
        k: u32,
        c: u32,
    ) -> Result<Self, InputError> {
        let u = algebra.universe().clone();
        let n = u.unknown_vars().len();
        let r = f_indices.len();
        if r == 0 {
            return Err(InputError::EmptySystem);
        }
        if r > n {
            return Err(InputError::TooManyEquations { r, n });
        }
        if minor_cols.len() != r {
            return Err(InputError::MinorShape { f: r, cols: minor_cols.len() });
        }
        check_indices("f", &f_indices, algebra.generators.len())?;
        check_indices("cols", &minor_cols, n)?;
        if approx.len() != n {
            return Err(InputError::ApproxLength { got: approx.len(), n });
        }
        if k == 0 {
            return Err(InputError::ZeroK);
        }
        let base = |v: Var| u.kind(v) == crate::universe::VarKind::Local;
        let base_or_y = |v: Var| base(v) || u.kind(v) == crate::universe::VarKind::Unknown;
        for (i, g) in algebra.generators.iter().enumerate() {
            if !g.only_in(base_or_y) {
                return Err(InputError::Variables { what: format!("generator {} of I", i + 1), allowed: "x and Y" });
            }
        }
        if !multiplier.only_in(base_or_y) {
            return Err(InputError::Variables { what: "N".into(), allowed: "x and Y" });
        }
        for (i, y) in approx.iter().enumerate() {
            if !y.only_in(base) {
                return Err(InputError::Variables { what: format!("entry {} of y'", i + 1), allowed: "x" });
            }
        }
        Ok(DesingularizationInput { algebra, f_indices, minor_cols, multiplier, approx, k, c })
    }

    pub fn universe(&self) -> &Arc<Universe> {
        self.algebra.universe()
    }

    pub fn ring(&self) -> &LocalRing<F> {
        &self.algebra.ring
    }

    pub fn n(&self) -> usize {
        self.approx.len()
    }

    pub fn r(&self) -> usize {
        self.f_indices.len()
    }

    pub fn system(&self) -> Vec<Polynomial<F>> {
        self.f_indices.iter().map(|&i| self.algebra.generators[i].clone()).collect()
    }

    /// Column order with the minor's columns first, then the rest ascending.
    pub fn permutation(&self) -> Vec<usize> {
        let mut perm = self.minor_cols.clone();
        perm.extend((0..self.n()).filter(|j| !self.minor_cols.contains(j)));
        perm
    }

    /// Bindings `Y_j -> y'_j`.
    pub fn approx_bindings(&self) -> std::collections::BTreeMap<Var, Polynomial<F>> {
        self.algebra.unknowns().into_iter().zip(self.approx.iter().cloned()).collect()
    }
}
