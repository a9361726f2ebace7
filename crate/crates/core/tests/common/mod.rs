//! Random inputs shared by the integration suites.
#![allow(dead_code)]

use std::sync::Arc;

use neron_core::local::LocalRing;
use neron_core::neron::{AlgebraPresentation, DesingularizationInput};
use neron_core::poly::{monomials_of_degree, Monomial, Polynomial, Var};
use neron_core::{rational, Rational, Universe};
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type P = Polynomial<Rational>;

pub fn c(k: i64) -> P {
    P::from_int(k)
}

pub fn v(u: &Universe, name: &str) -> P {
    P::var(u.lookup(name).unwrap())
}

pub fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let k = rng.gen_range(-bound..=bound);
        if k != 0 {
            return k;
        }
    }
}

/// Random polynomial in `vars` with terms of degree in `lo..=hi`.
pub fn random_poly(rng: &mut ChaCha8Rng, vars: &[Var], lo: u32, hi: u32, terms: usize) -> P {
    let mut p = P::zero();
    for _ in 0..terms {
        let deg = rng.gen_range(lo..=hi);
        let mut pairs = Vec::new();
        let mut left = deg;
        for (i, &x) in vars.iter().enumerate() {
            let e = if i + 1 == vars.len() { left } else { rng.gen_range(0..=left) };
            left -= e;
            pairs.push((x, e));
        }
        p.add_term(Monomial::from_pairs(pairs), rational(nonzero(rng, 5), rng.gen_range(1..=3)));
    }
    p
}

/// A valid instance over `k[x]` with one equation and residual order `m`.
///
/// `f = (Y1 - a x)(Y1 - b x)(1 + s Y2)` (or with the roles of the unknowns
/// swapped), `y'` perturbs the root `a x` by `x^(m-1)`; then `d` has order 1,
/// `e = k = 1` and `c = m - 3`.
pub struct Instance {
    pub input: DesingularizationInput<Rational>,
    pub residual_order: u32,
    pub root: Vec<P>,
}

pub fn reduced_instance(rng: &mut ChaCha8Rng, n: usize, m: u32) -> Instance {
    assert!((1..=2).contains(&n) && m >= 4);
    let unknowns: Vec<&str> = if n == 1 { vec!["Y"] } else { vec!["Y1", "Y2"] };
    let u = Arc::new(Universe::new(&["x"], &unknowns).unwrap());
    let x = v(&u, "x");
    let ys = u.unknown_vars();
    let main = if n == 2 { rng.gen_range(0..2) } else { 0 };
    let other = 1 - main;
    let a = nonzero(rng, 3);
    let b = loop {
        let b = nonzero(rng, 3);
        if b != a {
            break b;
        }
    };
    let y = P::var(ys[main]);
    let mut f = &(&y - &(&c(a) * &x)) * &(&y - &(&c(b) * &x));
    let mut approx = vec![P::zero(); n];
    let mut root = vec![P::zero(); n];
    root[main] = &c(a) * &x;
    approx[main] = &root[main] + &(&c(nonzero(rng, 2)) * &x.pow(m - 1));
    if n == 2 {
        let w = P::var(ys[other]);
        f = &f * &(&P::one() + &(&c(nonzero(rng, 2)) * &w));
        let free = &c(rng.gen_range(-2..=2)) * &x.pow(rng.gen_range(1..=3));
        approx[other] = free.clone();
        root[other] = free;
    }
    let ring = LocalRing::new(u, vec![]).unwrap();
    let algebra = AlgebraPresentation { ring, generators: vec![f] };
    let input = DesingularizationInput::new(algebra, vec![0], vec![main], P::one(), approx, 1, m - 3).unwrap();
    Instance { input, residual_order: m, root }
}

/// An instance over the non-reduced `k[x,z]/(z^3, zx)` where `d` is
/// `2(x + z)` plus noise of order `>= 2` and `e = 2`; `k = 2`.
pub fn nonreduced_instance(rng: &mut ChaCha8Rng) -> DesingularizationInput<Rational> {
    let u = Arc::new(Universe::new(&["x", "z"], &["Y"]).unwrap());
    let (x, z, y) = (v(&u, "x"), v(&u, "z"), v(&u, "Y"));
    let root = &(&x + &z) + &(&c(rng.gen_range(-2..=2)) * &x.pow(2));
    let f = &(&y - &root) * &(&y + &root);
    let approx = &root + &(&c(nonzero(rng, 2)) * &x.pow(rng.gen_range(11..=13)));
    let ring = LocalRing::new(u, vec![z.pow(3), &z * &x]).unwrap();
    let algebra = AlgebraPresentation { ring, generators: vec![f] };
    DesingularizationInput::new(algebra, vec![0], vec![0], P::one(), vec![approx], 2, 0).unwrap()
}

pub fn basis_below(vars: &[Var], d: u32) -> Vec<Monomial> {
    (0..d).flat_map(|k| monomials_of_degree(vars, k)).collect()
}

pub fn coords(p: &P, basis: &[Monomial]) -> Vec<Rational> {
    basis.iter().map(|m| p.coefficient(m)).collect()
}

pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let mut r = 0;
    let cols = rows.first().map_or(0, Vec::len);
    for col in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, piv);
        let inv = Rational::one() / rows[r][col].clone();
        let pivot_row: Vec<Rational> = rows[r].iter().map(|v| v * &inv).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
        rows[r] = pivot_row;
        r += 1;
    }
    r
}

/// Vectors `c` with `sum_i c_i * images[i] = 0`.
pub fn nullspace(images: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = images.len();
    let m = images.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<Rational>> = (0..m).map(|r| (0..n).map(|c| images[c][r].clone()).collect()).collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..m).find(|&i| !a[i][col].is_zero()) else { continue };
        a.swap(row, p);
        let inv = Rational::one() / a[row][col].clone();
        for v in a[row].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = a[row].clone();
        for (i, r) in a.iter_mut().enumerate() {
            if i != row && !r[col].is_zero() {
                let f = r[col].clone();
                for (v, pv) in r.iter_mut().zip(&pivot_row) {
                    *v -= &f * pv;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|fc| {
            let mut v = vec![Rational::zero(); n];
            v[fc] = Rational::one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[r][fc].clone();
            }
            v
        })
        .collect()
}

/// Brute-force annihilator exponent of `d` in `k[vars]/(J)` for a monomial `J`.
///
/// Kernels of multiplication by `d^e` are computed in `k[vars]/(J + m^8)`
/// and projected to degrees `< 4`, which removes the truncation artifacts
/// for `e <= 3` when `d` has order 1.
pub fn brute_force_exponent(vars: &[Var], j_monomials: &[Monomial], d: &P) -> u32 {
    let (big, small) = (8, 4);
    let outside_j = |m: &Monomial| !j_monomials.iter().any(|g| g.divides(m));
    let basis: Vec<Monomial> = basis_below(vars, big).into_iter().filter(|m| outside_j(m)).collect();
    let low: Vec<usize> = (0..basis.len()).filter(|&i| basis[i].degree() < small).collect();
    let projected_kernel_dim = |e: u32| -> usize {
        let de = d.pow(e);
        let images: Vec<Vec<Rational>> = basis
            .iter()
            .map(|m| {
                coords(
                    &(&P::term(Rational::one(), m.clone()) * &de).truncate_degree(big).filter_terms(outside_j),
                    &basis,
                )
            })
            .collect();
        let rows: Vec<Vec<Rational>> =
            nullspace(&images).iter().map(|v| low.iter().map(|&i| v[i].clone()).collect()).collect();
        rank(rows)
    };
    (1..=3).find(|&e| projected_kernel_dim(e) == projected_kernel_dim(e + 1)).expect("stabilizes by 3")
}
