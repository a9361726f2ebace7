mod common;

use std::sync::Arc;

use common::{basis_below, brute_force_exponent, coords, rank};

use neron_core::lifting::TruncatedRing;
use neron_core::local::{IdealHandle, LocalRing};
use neron_core::poly::{LocalFraction, Monomial, Polynomial, Var};
use neron_core::{rational, Rational, Universe};
use proptest::prelude::*;

type P = Polynomial<Rational>;

fn xz() -> Arc<Universe> {
    Arc::new(Universe::new(&["x", "z"], &[] as &[&str]).unwrap())
}

const X: Var = Var(0);
const Z: Var = Var(1);

/// Polynomials in `x, z` without constant term.
fn in_maximal(max_deg: u32, max_terms: usize) -> impl Strategy<Value = P> {
    let term = (0..=max_deg, 0..=max_deg, -4i64..=4);
    proptest::collection::vec(term, 1..=max_terms).prop_map(move |ts| {
        let mut p = P::zero();
        for (a, b, c) in ts {
            if a + b == 0 || a + b > max_deg || c == 0 {
                continue;
            }
            p.add_term(Monomial::from_pairs([(X, a), (Z, b)]), rational(c, 1));
        }
        p
    })
}

fn any_poly(max_deg: u32) -> impl Strategy<Value = P> {
    (in_maximal(max_deg, 5), -3i64..=3).prop_map(|(p, c)| &p + &P::from_int(c))
}

/// `p ∈ (gens) + (x,z)^d`, decided by linear algebra on monomials of degree `< d`.
fn member_by_linear_algebra(p: &P, gens: &[P], d: u32) -> bool {
    let basis = basis_below(&[X, Z], d);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for g in gens {
        for m in &basis {
            rows.push(coords(&(&P::term(rational(1, 1), m.clone()) * g).truncate_degree(d), &basis));
        }
    }
    let base = rank(rows.clone());
    rows.push(coords(&p.truncate_degree(d), &basis));
    rank(rows) == base
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn membership_matches_linear_algebra(
        gens in proptest::collection::vec(in_maximal(3, 3), 1..=2),
        cofs in proptest::collection::vec(any_poly(2), 2),
        noise in any_poly(3),
        member in any::<bool>(),
    ) {
        let u = xz();
        let d = 7;
        let mut p = P::zero();
        for (g, c) in gens.iter().zip(&cofs) {
            p += g * c;
        }
        if !member {
            p += noise;
        }
        let ideal = IdealHandle::new(u.clone(), gens.clone()).sum(&IdealHandle::maximal_power(u, d));
        prop_assert_eq!(ideal.is_member(&p), member_by_linear_algebra(&p, &gens, d));
    }

    #[test]
    fn normal_form_is_idempotent(gens in proptest::collection::vec(in_maximal(3, 3), 1..=2), p in any_poly(4)) {
        let ideal = IdealHandle::new(xz(), gens);
        let nf = ideal.normal_form(&p);
        prop_assert_eq!(ideal.normal_form(&nf), nf.clone());
        prop_assert!(ideal.is_member(&(&p - &nf)));
    }

    #[test]
    fn colon_contains_exactly_the_annihilating_elements(
        gens in proptest::collection::vec(in_maximal(3, 2), 1..=2),
        p in in_maximal(2, 2),
    ) {
        prop_assume!(!p.is_zero());
        let j = IdealHandle::new(xz(), gens.clone());
        let colon = j.colon(&p);
        for q in colon.generators() {
            prop_assert!(j.is_member(&(q * &p)));
        }
        for g in &gens {
            prop_assert!(colon.is_member(g));
        }
    }

    #[test]
    fn monomial_colon_formula(
        exps in proptest::collection::vec((0u32..4, 0u32..4), 1..=3),
        (a, b) in (0u32..3, 0u32..3),
    ) {
        let u = xz();
        let mono = |a: u32, b: u32| P::term(rational(1, 1), Monomial::from_pairs([(X, a), (Z, b)]));
        let exps: Vec<(u32, u32)> = exps.into_iter().filter(|&(i, j)| i + j > 0).collect();
        prop_assume!(!exps.is_empty());
        let j = IdealHandle::new(u.clone(), exps.iter().map(|&(i, k)| mono(i, k)).collect());
        let expected = IdealHandle::new(
            u,
            exps.iter().map(|&(i, k)| mono(i.saturating_sub(a), k.saturating_sub(b))).collect(),
        );
        prop_assert!(j.colon(&mono(a, b)).equals(&expected).unwrap());
    }

    #[test]
    fn power_containment_is_monotone(gens in proptest::collection::vec(in_maximal(3, 3), 1..=3), k in 1u32..5) {
        let ideal = IdealHandle::new(xz(), gens);
        if ideal.contains_power(k) {
            prop_assert!(ideal.contains_power(k + 1));
        }
        if let Some(w) = ideal.power_witness(k + 1) {
            prop_assert!(!ideal.is_member(&P::term(rational(1, 1), w.clone())));
            prop_assert_eq!(w.degree(), k + 1);
        }
    }

    #[test]
    fn truncated_multiplication_agrees(
        j in proptest::collection::vec(in_maximal(3, 2), 0..=2),
        a in any_poly(4),
        b in any_poly(4),
        d in 2u32..7,
    ) {
        let u = xz();
        let ring = LocalRing::new(u.clone(), j.clone()).unwrap();
        let t = TruncatedRing::new(ring.clone(), d);
        prop_assert_eq!(t.mul(&t.reduce(&a), &t.reduce(&b)), t.reduce(&(&a * &b)));
        // canonical forms decide membership in J + (x)^D
        let diff_zero = t.reduce(&a) == t.reduce(&b);
        prop_assert_eq!(diff_zero, ring.maximal_power(d).is_member(&(&a - &b)));
        // inverses of units
        let unit = &a.filter_terms(|m| !m.is_one()) + &P::one();
        let inv = t.inverse(&unit).unwrap();
        prop_assert_eq!(t.mul(&inv, &unit), P::one());
        let frac = LocalFraction::new(b.clone(), unit.clone()).unwrap();
        prop_assert_eq!(t.mul(&t.truncate_fraction(&frac).unwrap(), &unit), t.reduce(&b));
    }
}

#[test]
fn annihilator_exponents_match_brute_force() {
    let u = xz();
    let (x, z) = (P::var(X), P::var(Z));
    let mono = |a, b| Monomial::from_pairs([(X, a), (Z, b)]);
    let cases: Vec<(Vec<Monomial>, P, u32)> = vec![
        (vec![], &(&P::from_int(3) + &x) * &x, 1),
        (vec![mono(0, 2), mono(1, 1)], x.clone(), 1),
        (vec![mono(0, 3), mono(1, 1)], &x + &z, 2),
        (vec![mono(0, 3), mono(1, 1)], &(&x + &z) + &x.pow(2), 2),
        (vec![mono(0, 3), mono(1, 1)], &x + &z.pow(2), 1),
    ];
    for (j, d, expected) in cases {
        let gens: Vec<P> = j.iter().map(|m| P::term(rational(1, 1), m.clone())).collect();
        let ring = LocalRing::new(u.clone(), gens).unwrap();
        let e = ring.annihilator_exponent(&LocalFraction::from_poly(d.clone())).unwrap();
        assert_eq!(e, expected, "d = {d:?}");
        assert_eq!(brute_force_exponent(&[X, Z], &j, &d), expected, "oracle, d = {d:?}");
    }
}
