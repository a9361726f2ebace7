use std::fmt;

use super::input::DesingularizationInput;
use super::NeronError;
use crate::poly::{LocalFraction, Monomial, PolyMatrix, Polynomial};
use crate::scalar::Scalar;

/// The conditions the algorithm checks before constructing anything.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ConditionKind {
    /// `N * I ⊆ (f) + J`, the promise `N ∈ ((f):I)`.
    MultiplierInColon,
    /// `I(y') ⊆ (x)^((2e+1)k) + J`.
    ApproxSolves,
    /// `I(y') ⊆ (x)^((2e+1)k+c) + J`, checked when `c > 0`.
    ApproxSolvesWithSlack,
    /// `(x)^k ⊆ (d) + J`.
    PowerInDIdeal,
}

impl ConditionKind {
    pub fn label(self) -> &'static str {
        match self {
            ConditionKind::MultiplierInColon => "N*I in (f)+J",
            ConditionKind::ApproxSolves => "I(y') in (x)^((2e+1)k)+J",
            ConditionKind::ApproxSolvesWithSlack => "I(y') in (x)^((2e+1)k+c)+J",
            ConditionKind::PowerInDIdeal => "(x)^k in (d)+J",
        }
    }
}

/// Why a condition failed.
#[derive(Clone, PartialEq, Debug)]
pub enum Witness<F> {
    /// A monomial of `(x)^k` outside `(d) + J`.
    Monomial(Monomial),
    /// A generator (zero-based index into `I`) whose image has this nonzero normal form.
    NormalForm { generator: usize, remainder: Polynomial<F> },
}

#[derive(Clone, PartialEq, Debug)]
pub struct Condition<F> {
    pub kind: ConditionKind,
    pub passed: bool,
    pub witness: Option<Witness<F>>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct CheckReport<F> {
    /// The selected minor `M` of the Jacobian.
    pub minor: Polynomial<F>,
    /// `P = N * M`.
    pub product: Polynomial<F>,
    /// `d = P(y')`.
    pub d: Polynomial<F>,
    /// Annihilator exponent of `d`; 1 when `d` vanishes in `A`.
    pub e: u32,
    pub d_is_zero: bool,
    pub conditions: Vec<Condition<F>>,
}

impl<F: Scalar> CheckReport<F> {
    pub fn passed(&self) -> bool {
        !self.d_is_zero && self.conditions.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Condition<F>> {
        self.conditions.iter().filter(|c| !c.passed)
    }
}

impl<F: Scalar> fmt::Display for Witness<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Monomial(m) => write!(f, "monomial {m:?}"),
            Witness::NormalForm { generator, remainder } => {
                write!(f, "generator {} leaves a remainder with {} terms", generator + 1, remainder.num_terms())
            }
        }
    }
}

/// The `r x n` Jacobian of the selected system.
pub(crate) fn jacobian<F: Scalar>(inp: &DesingularizationInput<F>) -> PolyMatrix<F> {
    let ys = inp.algebra.unknowns();
    PolyMatrix::from_rows(inp.system().iter().map(|f| ys.iter().map(|&y| f.derivative(y)).collect()).collect())
}

/// Steps 1 to 4: computes `M`, `P`, `d`, `e` and checks the containments.
///
/// Returns the report when everything holds and
/// [`NeronError::NotWellChosen`] carrying the report otherwise.
pub fn validate_input<F: Scalar>(inp: &DesingularizationInput<F>) -> Result<CheckReport<F>, NeronError<F>> {
    let report = check_input(inp)?;
    if report.passed() {
        Ok(report)
    } else {
        Err(NeronError::NotWellChosen(Box::new(report)))
    }
}

/// Like [`validate_input`] but always returns the report.
pub fn check_input<F: Scalar>(inp: &DesingularizationInput<F>) -> Result<CheckReport<F>, NeronError<F>> {
    let ring = inp.ring();
    let rows: Vec<usize> = (0..inp.r()).collect();
    let minor = jacobian(inp).select(&rows, &inp.minor_cols).determinant().expect("square by construction");
    let product = &inp.multiplier * &minor;
    let at_approx = inp.approx_bindings();
    let d = product.substitute(&at_approx);
    let d_is_zero = ring.is_zero(&d);
    let e = if d_is_zero { 1 } else { ring.annihilator_exponent(&LocalFraction::from_poly(d.clone()))? };

    let mut conditions = Vec::new();

    let f_ideal = ring.ideal_with(inp.system());
    let mult_fail = inp.algebra.generators.iter().enumerate().find_map(|(i, q)| {
        let nf = f_ideal.normal_form(&(&inp.multiplier * q));
        (!nf.is_zero()).then_some(Witness::NormalForm { generator: i, remainder: nf })
    });
    conditions.push(Condition {
        kind: ConditionKind::MultiplierInColon,
        passed: mult_fail.is_none(),
        witness: mult_fail,
    });

    let images: Vec<Polynomial<F>> = inp.algebra.generators.iter().map(|q| q.substitute(&at_approx)).collect();
    let base = (2 * e + 1) * inp.k;
    let mut precision_checks = vec![(ConditionKind::ApproxSolves, base)];
    if inp.c > 0 {
        precision_checks.push((ConditionKind::ApproxSolvesWithSlack, base + inp.c));
    }
    for (kind, m) in precision_checks {
        let ideal = ring.maximal_power(m);
        let fail = images.iter().enumerate().find_map(|(i, q)| {
            let nf = ideal.normal_form(q);
            (!nf.is_zero()).then_some(Witness::NormalForm { generator: i, remainder: nf })
        });
        conditions.push(Condition { kind, passed: fail.is_none(), witness: fail });
    }

    let d_ideal = ring.ideal_with([d.clone()]);
    let power_fail = d_ideal.power_witness(inp.k).map(Witness::Monomial);
    conditions.push(Condition {
        kind: ConditionKind::PowerInDIdeal,
        passed: power_fail.is_none(),
        witness: power_fail,
    });

    Ok(CheckReport { minor, product, d, e, d_is_zero, conditions })
}
