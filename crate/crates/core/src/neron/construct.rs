use std::collections::BTreeMap;
use std::sync::Arc;

use super::check::{jacobian, validate_input, CheckReport};
use super::input::DesingularizationInput;
use super::NeronError;
use crate::local::{IdealHandle, LocalRing};
use crate::poly::{monomials_of_degree, taylor_split, LocalFraction, PolyMatrix, Polynomial, Var};
use crate::scalar::Scalar;
use crate::universe::Universe;

/// The standard smooth algebra `C = (A[Y,T]/(I, g, h))_{s s'}` together with
/// everything needed to re-check it.
///
/// Internal coordinate `l` refers to `Y_{perm[l]}`; `T_l` is the `l`-th
/// auxiliary variable. The first `r` internal coordinates are the columns of
/// the chosen minor.
#[derive(Clone, Debug)]
pub struct SmoothPresentation<F> {
    pub ring: LocalRing<F>,
    pub generators: Vec<Polynomial<F>>,
    /// Zero-based indices of `f` inside the generators.
    pub f_indices: Vec<usize>,
    pub perm: Vec<usize>,
    pub multiplier: Polynomial<F>,
    pub approx: Vec<Polynomial<F>>,
    pub k: u32,
    pub c: u32,
    pub d: Polynomial<F>,
    pub e: u32,
    /// Jacobian of `f` bordered by `(0 | Id)`, columns permuted.
    pub h_matrix: PolyMatrix<F>,
    /// `N * adj(H)`, so that `G H = H G = P Id`.
    pub g_matrix: PolyMatrix<F>,
    /// `G(y')`.
    pub g_at_approx: PolyMatrix<F>,
    /// `h_l = Y_{perm[l]} - y'_{perm[l]} - d^e (G(y') T)_l`.
    pub h: Vec<Polynomial<F>>,
    /// `Q_i`, the weighted Taylor tail of `f_i`.
    pub q: Vec<Polynomial<F>>,
    /// `a_i = f_i(y') / d^(e+1)` modulo `J`.
    pub a: Vec<LocalFraction<F>>,
    /// `T_i + d^(e-1) Q_i`, so that `g_i = a_i + g_poly_i`.
    pub g_poly: Vec<Polynomial<F>>,
    pub s: Polynomial<F>,
    pub s_prime: Polynomial<F>,
    pub warnings: Vec<String>,
}

impl<F: Scalar> SmoothPresentation<F> {
    pub fn universe(&self) -> &Arc<Universe> {
        self.ring.universe()
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn r(&self) -> usize {
        self.f_indices.len()
    }

    pub fn system(&self) -> Vec<Polynomial<F>> {
        self.f_indices.iter().map(|&i| self.generators[i].clone()).collect()
    }

    pub fn t_vars(&self) -> Vec<Var> {
        self.universe().aux_vars()
    }

    /// `Y_{perm[l]}` for each internal coordinate.
    pub fn permuted_unknowns(&self) -> Vec<Var> {
        let ys = self.universe().unknown_vars();
        self.perm.iter().map(|&j| ys[j]).collect()
    }

    /// `g_i` with the unit denominator of `a_i` cleared.
    pub fn g_cleared(&self) -> Vec<Polynomial<F>> {
        self.a.iter().zip(&self.g_poly).map(|(a, g)| a.numerator() + &(a.denominator() * g)).collect()
    }

    /// `G(y') T` in internal coordinates.
    pub fn direction(&self) -> Vec<Polynomial<F>> {
        let t: Vec<Polynomial<F>> = self.t_vars().into_iter().map(Polynomial::var).collect();
        self.g_at_approx.mul_vec(&t)
    }

    /// `y'_{perm[l]} + d^e (G(y') t)_l` for a vector `t`, mapped back to the
    /// original order of the unknowns.
    pub fn solution_from(&self, t: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
        let bind: BTreeMap<Var, Polynomial<F>> = self.t_vars().into_iter().zip(t.iter().cloned()).collect();
        let de = self.d.pow(self.e);
        let dir = self.direction();
        let mut y = self.approx.clone();
        for (l, &j) in self.perm.iter().enumerate() {
            y[j] = &self.approx[j] + &(&de * &dir[l].substitute(&bind));
        }
        y
    }
}

/// `H`: the Jacobian of `f` restricted to the permuted columns, bordered by
/// `(0 | Id_(n-r))`, and `G = N adj(H)`.
pub fn border_matrix<F: Scalar>(inp: &DesingularizationInput<F>) -> (PolyMatrix<F>, PolyMatrix<F>, Vec<usize>) {
    let (n, r) = (inp.n(), inp.r());
    let perm = inp.permutation();
    let jac = jacobian(inp);
    let mut h = PolyMatrix::zeros(n, n);
    for i in 0..n {
        for (l, &j) in perm.iter().enumerate() {
            let entry = if i < r {
                jac.get(i, j).clone()
            } else if i == l {
                Polynomial::one()
            } else {
                Polynomial::zero()
            };
            h.set(i, l, entry);
        }
    }
    let g = h.adjugate().expect("square").scale(&inp.multiplier);
    (h, g, perm)
}

/// The `h` system in internal coordinates.
pub fn build_h<F: Scalar>(
    inp: &DesingularizationInput<F>,
    report: &CheckReport<F>,
    g_at_approx: &PolyMatrix<F>,
    perm: &[usize],
) -> Vec<Polynomial<F>> {
    let ys = inp.algebra.unknowns();
    let t: Vec<Polynomial<F>> = inp.universe().aux_vars().into_iter().map(Polynomial::var).collect();
    let dir = g_at_approx.mul_vec(&t);
    let de = report.d.pow(report.e);
    perm.iter().enumerate().map(|(l, &j)| &(&Polynomial::var(ys[j]) - &inp.approx[j]) - &(&de * &dir[l])).collect()
}

pub struct GSystem<F> {
    pub q: Vec<Polynomial<F>>,
    pub a: Vec<LocalFraction<F>>,
    pub g_poly: Vec<Polynomial<F>>,
    pub warnings: Vec<String>,
}

/// Taylor-expands each `f_i` at `y'` along `G(y') T` and assembles
/// `g_i = a_i + T_i + d^(e-1) Q_i`.
pub fn build_g<F: Scalar>(
    inp: &DesingularizationInput<F>,
    report: &CheckReport<F>,
    g_at_approx: &PolyMatrix<F>,
    perm: &[usize],
) -> Result<GSystem<F>, NeronError<F>> {
    let u = inp.universe();
    let ring = inp.ring();
    let ys = inp.algebra.unknowns();
    let ts = u.aux_vars();
    let t: Vec<Polynomial<F>> = ts.iter().map(|&v| Polynomial::var(v)).collect();
    let dir = g_at_approx.mul_vec(&t);
    let point: Vec<(Var, Polynomial<F>)> = perm.iter().map(|&j| (ys[j], inp.approx[j].clone())).collect();
    let (d, e) = (&report.d, report.e);
    let de = d.pow(e);
    let denom = d.pow(e + 1);
    let slack = (inp.c > 0).then(|| {
        let gens =
            monomials_of_degree(&u.local_vars(), inp.c).into_iter().map(|m| &de * &Polynomial::term(F::one(), m));
        ring.ideal_with(gens)
    });

    let mut out = GSystem { q: vec![], a: vec![], g_poly: vec![], warnings: vec![] };
    for (i, f) in inp.system().iter().enumerate() {
        let split = taylor_split(f, &point, &dir, u.marker());
        if split.linear != d * &t[i] {
            return Err(NeronError::Internal(format!("first-order term of f_{} is not d*T_{}", i + 1, i + 1)));
        }
        let q = split.weighted_tail(&de);
        let a = match LocalFraction::new(split.value.clone(), denom.clone()) {
            Ok(a) => a,
            Err(_) => ring
                .ideal()
                .represent(&split.value, std::slice::from_ref(&denom))
                .map_err(|_| NeronError::Internal(format!("f_{}(y') is not divisible by d^(e+1)", i + 1)))?
                .remove(0),
        };
        if let Some(ideal) = &slack {
            if !ideal.is_member(a.numerator()) {
                out.warnings.push(format!("a_{} is not in d^e (x)^c + J", i + 1));
            }
        }
        let g = &t[i] + &(&d.pow(e - 1) * &q);
        out.q.push(q);
        out.a.push(a);
        out.g_poly.push(g);
    }
    Ok(out)
}

/// `s = det(dg_i/dT_j)` and `s' = P(y' + d^e G(y') T) / d`.
pub fn compute_units<F: Scalar>(
    inp: &DesingularizationInput<F>,
    report: &CheckReport<F>,
    g_at_approx: &PolyMatrix<F>,
    perm: &[usize],
    g_poly: &[Polynomial<F>],
) -> Result<(Polynomial<F>, Polynomial<F>), NeronError<F>> {
    let u = inp.universe();
    let ts = u.aux_vars();
    let r = inp.r();
    let jac =
        PolyMatrix::from_rows(g_poly.iter().map(|g| ts[..r].iter().map(|&t| g.derivative(t)).collect()).collect());
    let s = jac.determinant().expect("square");

    let ys = inp.algebra.unknowns();
    let t: Vec<Polynomial<F>> = ts.iter().map(|&v| Polynomial::var(v)).collect();
    let dir = g_at_approx.mul_vec(&t);
    let point: Vec<(Var, Polynomial<F>)> = perm.iter().map(|&j| (ys[j], inp.approx[j].clone())).collect();
    let split = taylor_split(&report.product, &point, &dir, u.marker());
    if split.value != report.d {
        return Err(NeronError::Internal("P(y') differs from d".into()));
    }
    let (d, e) = (&report.d, report.e);
    let mut s_prime = &Polynomial::one() + &(&d.pow(e - 1) * &split.linear);
    for (&j, b) in &split.higher {
        s_prime += &d.pow(e * j - 1) * b;
    }
    Ok((s, s_prime))
}

/// The full construction: checks the input, then builds `H`, `G`, `h`, `g`,
/// `s` and `s'`.
pub fn desingularize<F: Scalar>(inp: &DesingularizationInput<F>) -> Result<SmoothPresentation<F>, NeronError<F>> {
    let report = validate_input(inp)?;
    let (h_matrix, g_matrix, perm) = border_matrix(inp);
    let g_at_approx = g_matrix.substitute(&inp.approx_bindings());
    let h = build_h(inp, &report, &g_at_approx, &perm);
    let gs = build_g(inp, &report, &g_at_approx, &perm)?;
    let (s, s_prime) = compute_units(inp, &report, &g_at_approx, &perm, &gs.g_poly)?;
    Ok(SmoothPresentation {
        ring: inp.ring().clone(),
        generators: inp.algebra.generators.clone(),
        f_indices: inp.f_indices.clone(),
        perm,
        multiplier: inp.multiplier.clone(),
        approx: inp.approx.clone(),
        k: inp.k,
        c: inp.c,
        d: report.d,
        e: report.e,
        h_matrix,
        g_matrix,
        g_at_approx,
        h,
        q: gs.q,
        a: gs.a,
        g_poly: gs.g_poly,
        s,
        s_prime,
        warnings: gs.warnings,
    })
}

/// The ideal `(gens) + J` of a presentation's ring.
pub(crate) fn with_j<F: Scalar>(p: &SmoothPresentation<F>, gens: Vec<Polynomial<F>>) -> IdealHandle<F> {
    p.ring.ideal_with(gens)
}
