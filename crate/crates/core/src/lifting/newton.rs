use std::collections::BTreeMap;

use super::truncated::{TruncatedRing, TruncatedVector};
use super::LiftError;
use crate::neron::{required_precision, SmoothPresentation};
use crate::poly::{Polynomial, Var};
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct NewtonConfig {
    max_iterations: u32,
    target: u32,
}

fn ceil_log2(d: u32) -> u32 {
    if d <= 1 {
        0
    } else {
        32 - (d - 1).leading_zeros()
    }
}

impl NewtonConfig {
    /// Requires `max_iterations >= ceil(log2 D) + 2`.
    pub fn new(target: u32, max_iterations: u32) -> Result<Self, LiftError> {
        let min = ceil_log2(target) + 2;
        if max_iterations < min {
            return Err(LiftError::TooFewIterations { given: max_iterations, min });
        }
        Ok(NewtonConfig { max_iterations, target })
    }

    /// `ceil(log2 D) + 4` iterations.
    pub fn for_target(target: u32) -> Self {
        NewtonConfig { max_iterations: ceil_log2(target) + 4, target }
    }

    pub fn max_iterations(&self) -> u32 {
        self.max_iterations
    }

    pub fn target(&self) -> u32 {
        self.target
    }
}

/// Default truncation order `2((2e+1)k + c) + 4`.
pub fn default_truncation(e: u32, k: u32, c: u32) -> u32 {
    2 * required_precision(e, k, c) + 4
}

#[derive(Clone, Debug)]
pub struct NewtonOutcome<F> {
    pub solution: TruncatedVector<F>,
    /// Residual valuation before each step and after the last one.
    pub trace: Vec<u32>,
}

fn invert_constant<F: Scalar>(m: &[Vec<F>]) -> Option<Vec<Vec<F>>> {
    let n = m.len();
    let mut a: Vec<Vec<F>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = F::one() / a[col][col].clone();
        for v in a[col].iter_mut() {
            *v = v.clone() * inv.clone();
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (v, p) in a[r].iter_mut().zip(pivot_row) {
                    *v = v.clone() - factor.clone() * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

type Mat<F> = Vec<Vec<Polynomial<F>>>;

fn mat_mul<F: Scalar>(ring: &TruncatedRing<F>, a: &Mat<F>, b: &Mat<F>) -> Mat<F> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = Polynomial::zero();
                    for (l, row) in b.iter().enumerate() {
                        acc += ring.mul(&a[i][l], &row[j]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Solves `g(T_1..T_r, free) = 0` in the truncated ring by Newton's method.
///
/// `g` has `r` entries in `x` and the first `r + free.len()` auxiliary
/// variables; the Jacobian inverse is taken modulo `(x)` once and refined
/// alongside the solution.
pub fn newton_solve<F: Scalar>(
    g: &[Polynomial<F>],
    free: &TruncatedVector<F>,
    ring: &TruncatedRing<F>,
    cfg: &NewtonConfig,
) -> Result<NewtonOutcome<F>, LiftError> {
    let r = g.len();
    let ts = ring.base().universe().aux_vars();
    if r + free.len() > ts.len() {
        return Err(LiftError::Length { expected: ts.len() - r, got: free.len() });
    }
    let target = cfg.target.min(ring.order());
    let unknowns: Vec<Var> = ts[..r].to_vec();
    let jac: Mat<F> = g.iter().map(|gi| unknowns.iter().map(|&t| gi.derivative(t)).collect()).collect();

    let mut t: Vec<Polynomial<F>> = vec![Polynomial::zero(); r];
    let bind = |t: &[Polynomial<F>]| -> BTreeMap<Var, Polynomial<F>> {
        let mut b: BTreeMap<Var, Polynomial<F>> = unknowns.iter().copied().zip(t.iter().cloned()).collect();
        b.extend(ts[r..r + free.len()].iter().copied().zip(free.entries().iter().cloned()));
        b
    };
    let eval_jac = |b: &BTreeMap<Var, Polynomial<F>>| -> Mat<F> {
        jac.iter().map(|row| row.iter().map(|p| ring.eval(p, b)).collect()).collect()
    };

    let j0 = eval_jac(&bind(&t));
    let constants: Vec<Vec<F>> = j0.iter().map(|row| row.iter().map(|p| p.constant_term()).collect()).collect();
    let inv = invert_constant(&constants).ok_or(LiftError::SingularJacobian)?;
    let mut x: Mat<F> = inv.into_iter().map(|row| row.into_iter().map(Polynomial::constant).collect()).collect();

    let mut trace = Vec::new();
    for _ in 0..=cfg.max_iterations {
        let b = bind(&t);
        let res: Vec<Polynomial<F>> = g.iter().map(|gi| ring.eval(gi, &b)).collect();
        let ord = res.iter().map(|p| ring.valuation(p)).min().unwrap_or(ring.order());
        trace.push(ord);
        if ord >= target {
            return Ok(NewtonOutcome { solution: TruncatedVector::new(ring, t), trace });
        }
        if trace.len() > cfg.max_iterations as usize {
            break;
        }
        // X <- X (2 - J X)
        let jm = eval_jac(&b);
        let jx = mat_mul(ring, &jm, &x);
        let two_minus: Mat<F> = (0..r)
            .map(|i| {
                (0..r)
                    .map(|j| {
                        let id = if i == j { Polynomial::from_int(2) } else { Polynomial::zero() };
                        &id - &jx[i][j]
                    })
                    .collect()
            })
            .collect();
        x = mat_mul(ring, &x, &two_minus);
        for i in 0..r {
            let mut step = Polynomial::zero();
            for (xij, rj) in x[i].iter().zip(&res) {
                step += ring.mul(xij, rj);
            }
            t[i] = ring.reduce(&(&t[i] - &step));
        }
    }
    Err(LiftError::NoConvergence { iterations: cfg.max_iterations, trace })
}

/// `g_i = a_i + T_i + d^(e-1) Q_i` with `a_i` truncated into the ring.
fn truncated_g<F: Scalar>(
    pres: &SmoothPresentation<F>,
    ring: &TruncatedRing<F>,
) -> Result<Vec<Polynomial<F>>, LiftError> {
    pres.a.iter().zip(&pres.g_poly).map(|(a, g)| Ok(&ring.truncate_fraction(a)? + g)).collect()
}

#[derive(Clone, Debug)]
pub struct LiftOutcome<F> {
    /// The solution, in the original order of the unknowns.
    pub y: TruncatedVector<F>,
    /// All `n` auxiliary values `T`.
    pub t: TruncatedVector<F>,
    pub trace: Vec<u32>,
}

fn check_precision<F: Scalar>(pres: &SmoothPresentation<F>, d: u32) -> Result<(), LiftError> {
    let required = required_precision(pres.e, pres.k, pres.c);
    if d < required {
        return Err(LiftError::PrecisionTooLow { given: d, required });
    }
    Ok(())
}

fn solve_with_free<F: Scalar>(
    pres: &SmoothPresentation<F>,
    ring: &TruncatedRing<F>,
    free: TruncatedVector<F>,
) -> Result<LiftOutcome<F>, LiftError> {
    let g = truncated_g(pres, ring)?;
    let out = newton_solve(&g, &free, ring, &NewtonConfig::for_target(ring.order()))?;
    let mut t = out.solution.into_entries();
    t.extend(free.into_entries());
    let y = pres.solution_from(&t);
    Ok(LiftOutcome { y: TruncatedVector::new(ring, y), t: TruncatedVector::new(ring, t), trace: out.trace })
}

/// A solution of `I` modulo `(x)^D` near `y'`: the free `T` block is set to 0.
pub fn lift_solution<F: Scalar>(pres: &SmoothPresentation<F>, d: u32) -> Result<LiftOutcome<F>, LiftError> {
    check_precision(pres, d)?;
    let ring = TruncatedRing::new(pres.ring.clone(), d);
    let free = TruncatedVector::zeros(&ring, pres.n() - pres.r());
    solve_with_free(pres, &ring, free)
}

/// The solution attached to values `z` of the free `T` block.
pub fn parametrize_solutions<F: Scalar>(
    pres: &SmoothPresentation<F>,
    z: &[Polynomial<F>],
    d: u32,
) -> Result<LiftOutcome<F>, LiftError> {
    check_precision(pres, d)?;
    let expected = pres.n() - pres.r();
    if z.len() != expected {
        return Err(LiftError::Length { expected, got: z.len() });
    }
    let ring = TruncatedRing::new(pres.ring.clone(), d);
    let free = TruncatedVector::new(&ring, z.to_vec());
    solve_with_free(pres, &ring, free)
}

/// Largest `m <= D` with every generator vanishing modulo `(x)^m + J` at `y`.
pub fn residual<F: Scalar>(gens: &[Polynomial<F>], y: &TruncatedVector<F>) -> u32 {
    let ring = y.ring();
    let ys = ring.base().universe().unknown_vars();
    let bind: BTreeMap<Var, Polynomial<F>> = ys.into_iter().zip(y.entries().iter().cloned()).collect();
    gens.iter().map(|g| ring.valuation(&ring.eval(g, &bind))).min().unwrap_or(ring.order())
}
