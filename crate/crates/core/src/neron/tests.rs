use std::sync::Arc;

use super::*;
use crate::local::LocalRing;
use crate::poly::{LocalFraction, PolyMatrix, Polynomial, Var};
use crate::scalar::Rational;
use crate::universe::Universe;

type P = Polynomial<Rational>;

fn c(k: i64) -> P {
    P::from_int(k)
}

struct Vars {
    u: Arc<Universe>,
}

impl Vars {
    fn new(local: &[&str], unknowns: &[&str]) -> Self {
        Vars { u: Arc::new(Universe::new(local, unknowns).unwrap()) }
    }
    fn v(&self, name: &str) -> P {
        P::var(self.u.lookup(name).unwrap())
    }
    fn var(&self, name: &str) -> Var {
        self.u.lookup(name).unwrap()
    }
}

#[allow(clippy::too_many_arguments)]
fn input(
    vs: &Vars,
    j: Vec<P>,
    gens: Vec<P>,
    f: Vec<usize>,
    cols: Vec<usize>,
    n: P,
    approx: Vec<P>,
    k: u32,
    cc: u32,
) -> DesingularizationInput<Rational> {
    let ring = LocalRing::new(vs.u.clone(), j).unwrap();
    DesingularizationInput::new(AlgebraPresentation { ring, generators: gens }, f, cols, n, approx, k, cc).unwrap()
}

fn e1(vs: &Vars, approx: P) -> DesingularizationInput<Rational> {
    let (x, y) = (vs.v("x"), vs.v("Y"));
    input(vs, vec![], vec![&y.pow(2) - &x.pow(2)], vec![0], vec![0], P::one(), vec![approx], 1, 1)
}

#[test]
fn e1_presentation() {
    let vs = Vars::new(&["x"], &["Y"]);
    let (x, y, t) = (vs.v("x"), vs.v("Y"), vs.v("T"));
    let p = desingularize(&e1(&vs, &x + &x.pow(3))).unwrap();
    let d = &(&c(2) * &x) + &(&c(2) * &x.pow(3));
    assert_eq!(p.d, d);
    assert_eq!(p.e, 1);
    assert_eq!(p.g_matrix, PolyMatrix::identity(1));
    assert_eq!(p.h, vec![&(&(&y - &x) - &x.pow(3)) - &(&d * &t)]);
    assert_eq!(p.q, vec![t.pow(2)]);
    let a = LocalFraction::new(&x.pow(2) * &(&c(2) + &x.pow(2)), &c(4) * &(&P::one() + &x.pow(2)).pow(2)).unwrap();
    assert!(p.a[0].cross_eq(&a));
    assert_eq!(p.g_poly, vec![&t + &t.pow(2)]);
    assert_eq!(p.s, &P::one() + &(&c(2) * &t));
    assert_eq!(p.s_prime, p.s);
    assert!(p.warnings.is_empty());
    assert!(verify_presentation(&p).passed());
}

#[test]
fn e1_rejections() {
    let vs = Vars::new(&["x"], &["Y"]);
    let x = vs.v("x");
    for approx in [P::zero(), &x + &x.pow(2)] {
        let err = desingularize(&e1(&vs, approx)).unwrap_err();
        assert_eq!(err.to_string(), NOT_WELL_CHOSEN);
    }
    let NeronError::NotWellChosen(report) = desingularize(&e1(&vs, &x + &x.pow(2))).unwrap_err() else {
        panic!("expected rejection")
    };
    let failed: Vec<ConditionKind> = report.failures().map(|c| c.kind).collect();
    assert_eq!(failed, vec![ConditionKind::ApproxSolvesWithSlack]);
    let NeronError::NotWellChosen(report) = desingularize(&e1(&vs, P::zero())).unwrap_err() else {
        panic!("expected rejection")
    };
    assert!(report.d_is_zero);
}

#[test]
fn e1_without_slack_accepts_coarser_approximation() {
    let vs = Vars::new(&["x"], &["Y"]);
    let (x, y) = (vs.v("x"), vs.v("Y"));
    let inp = input(&vs, vec![], vec![&y.pow(2) - &x.pow(2)], vec![0], vec![0], P::one(), vec![&x + &x.pow(2)], 1, 0);
    let p = desingularize(&inp).unwrap();
    assert!(verify_presentation(&p).passed());
}

#[test]
fn e2_bordered_matrices() {
    let vs = Vars::new(&["x"], &["Y1", "Y2"]);
    let (x, y1, y2, t2) = (vs.v("x"), vs.v("Y1"), vs.v("Y2"), vs.v("T2"));
    let inp = input(
        &vs,
        vec![],
        vec![&y1.pow(2) - &x.pow(2)],
        vec![0],
        vec![0],
        P::one(),
        vec![&x + &x.pow(3), P::zero()],
        1,
        1,
    );
    let p = desingularize(&inp).unwrap();
    let z = P::zero;
    assert_eq!(p.h_matrix, PolyMatrix::from_rows(vec![vec![&c(2) * &y1, z()], vec![z(), P::one()]]));
    assert_eq!(p.g_matrix, PolyMatrix::from_rows(vec![vec![P::one(), z()], vec![z(), &c(2) * &y1]]));
    let gh = p.g_matrix.mul(&p.h_matrix);
    assert_eq!(gh, PolyMatrix::scalar(2, &c(2) * &y1));
    assert_eq!(gh, p.h_matrix.mul(&p.g_matrix));
    assert_eq!(p.h[1], &y2 - &(&p.d.pow(2) * &t2));
    assert_eq!(p.perm, vec![0, 1]);
    assert!(verify_presentation(&p).passed());
}

#[test]
fn permuted_minor_columns() {
    let vs = Vars::new(&["x"], &["Y1", "Y2"]);
    let (x, y1, y2) = (vs.v("x"), vs.v("Y1"), vs.v("Y2"));
    let inp = input(
        &vs,
        vec![],
        vec![&y2.pow(2) - &x.pow(2)],
        vec![0],
        vec![1],
        P::one(),
        vec![x.pow(3), &x + &x.pow(3)],
        1,
        1,
    );
    let p = desingularize(&inp).unwrap();
    assert_eq!(p.perm, vec![1, 0]);
    assert_eq!(p.h_matrix.get(0, 0), &(&c(2) * &y2));
    assert_eq!(p.h[1], &y1 - &x.pow(3) - &p.d.pow(2) * &vs.v("T2"));
    assert!(verify_presentation(&p).passed());
}

#[test]
fn nonreduced_base_with_exponent_two() {
    let vs = Vars::new(&["x", "z"], &["Y"]);
    let (x, z, y) = (vs.v("x"), vs.v("z"), vs.v("Y"));
    let xz = &x + &z;
    let inp = input(
        &vs,
        vec![z.pow(3), &z * &x],
        vec![&y.pow(2) - &xz.pow(2)],
        vec![0],
        vec![0],
        P::one(),
        vec![xz.clone()],
        2,
        1,
    );
    let report = validate_input(&inp).unwrap();
    assert_eq!(report.e, 2);
    let p = desingularize(&inp).unwrap();
    assert_eq!(p.d, &c(2) * &xz);
    assert!(verify_presentation(&p).passed());
}

#[test]
fn k_witness_is_reported() {
    let vs = Vars::new(&["x", "z"], &["Y"]);
    let (x, z, y) = (vs.v("x"), vs.v("z"), vs.v("Y"));
    let xz = &x + &z;
    let inp =
        input(&vs, vec![z.pow(3), &z * &x], vec![&y.pow(2) - &xz.pow(2)], vec![0], vec![0], P::one(), vec![xz], 1, 0);
    let report = check_input(&inp).unwrap();
    let cond = report.conditions.iter().find(|c| c.kind == ConditionKind::PowerInDIdeal).unwrap();
    assert!(!cond.passed);
    assert!(matches!(cond.witness, Some(Witness::Monomial(_))));
}

#[test]
fn multiplier_must_annihilate_the_quotient() {
    let vs = Vars::new(&["x"], &["Y1", "Y2"]);
    let (x, y1, y2) = (vs.v("x"), vs.v("Y1"), vs.v("Y2"));
    let gens = vec![&y1.pow(2) - &x.pow(2), &y2 - &x];
    let approx = vec![&x + &x.pow(3), x.clone()];
    let bad = input(&vs, vec![], gens.clone(), vec![0], vec![0], P::one(), approx.clone(), 1, 0);
    let report = check_input(&bad).unwrap();
    assert!(!report.conditions[0].passed);
    assert_eq!(report.conditions[0].kind, ConditionKind::MultiplierInColon);

    // with both equations selected the multiplier 1 works
    let good = input(&vs, vec![], gens, vec![0, 1], vec![0, 1], P::one(), approx, 1, 0);
    let p = desingularize(&good).unwrap();
    assert!(verify_presentation(&p).passed());
}

#[test]
fn perturbations_are_detected() {
    let vs = Vars::new(&["x"], &["Y"]);
    let x = vs.v("x");
    let p = desingularize(&e1(&vs, &x + &x.pow(3))).unwrap();

    let mut bad = p.clone();
    bad.g_poly[0] = &bad.g_poly[0] + &P::one();
    assert!(!verify_presentation(&bad).kind_passed(CertificateKind::ScaledGInFH));

    let mut bad = p.clone();
    bad.s = &bad.s + &vs.v("T");
    let r = verify_presentation(&bad);
    assert!(r.kind_passed(CertificateKind::UnitsAtOrigin));
    bad.s = &bad.s + &P::one();
    assert!(!verify_presentation(&bad).kind_passed(CertificateKind::UnitsAtOrigin));

    let mut bad = p.clone();
    bad.q[0] = &bad.q[0] + &vs.v("T");
    assert!(!verify_presentation(&bad).kind_passed(CertificateKind::TaylorCongruence));

    let mut bad = p;
    bad.h[0] = &bad.h[0] + &x.pow(5);
    assert!(!verify_presentation(&bad).passed());
}

#[test]
fn taylor_split_of_p_gives_s_prime() {
    let vs = Vars::new(&["x"], &["Y"]);
    let x = vs.v("x");
    let p = desingularize(&e1(&vs, &x + &x.pow(3))).unwrap();
    // d s' = P(y' + d^e G(y') T)
    let y = p.solution_from(&[vs.v("T")]);
    let bind = [(vs.var("Y"), y[0].clone())].into_iter().collect();
    let lhs = (&c(2) * &vs.v("Y")).substitute(&bind);
    assert_eq!(lhs, &p.d * &p.s_prime);
}

#[test]
fn precision_formula() {
    assert_eq!(required_precision(1, 1, 1), 4);
    assert_eq!(required_precision(2, 3, 0), 15);
}
