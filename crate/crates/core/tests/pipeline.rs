mod common;

use common::{nonreduced_instance, random_poly, reduced_instance};
use neron_core::io::{parse_problem, render_problem, ProblemFile};
use neron_core::lifting::{lift_solution, parametrize_solutions, residual, TruncatedVector};
use neron_core::neron::{desingularize, required_precision, verify_presentation};
use neron_core::poly::PolyMatrix;
use neron_core::{Input, Presentation};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Loss against pure doubling allowed per Newton step; the Jacobian of `g` is a unit at `T = 0`.
const CONTRACTION_OFFSET: u32 = 0;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn assert_border_identity(p: &Presentation) {
    let n = p.n();
    let product = &p.multiplier * &p.h_matrix.determinant().unwrap();
    let scalar = PolyMatrix::scalar(n, product);
    assert_eq!(p.g_matrix.mul(&p.h_matrix), scalar);
    assert_eq!(p.h_matrix.mul(&p.g_matrix), scalar);
}

fn assert_contracts(trace: &[u32], d: u32) {
    assert_eq!(*trace.last().unwrap(), d, "trace {trace:?}");
    for w in trace.windows(2) {
        assert!(w[1] >= d.min((2 * w[0]).saturating_sub(CONTRACTION_OFFSET)), "trace {trace:?}");
    }
}

fn pipeline(input: &Input) -> Presentation {
    let p = desingularize(input).unwrap();
    let report = verify_presentation(&p);
    assert!(report.passed(), "{report}");
    assert_border_identity(&p);
    p
}

#[test]
fn reduced_instances_verify_and_lift() {
    let mut r = rng(11);
    for case in 0..24 {
        let n = 1 + case % 2;
        let m = r.gen_range(4..=7);
        let inst = reduced_instance(&mut r, n, m);
        let p = pipeline(&inst.input);
        assert_eq!((p.e, p.k, p.c), (1, 1, m - 3));
        let d = required_precision(p.e, p.k, p.c) + 4;
        let out = lift_solution(&p, d).unwrap();
        assert_eq!(residual(&p.generators, &out.y), d);
        assert_contracts(&out.trace, d);
        let approx = TruncatedVector::new(out.y.ring(), p.approx.clone());
        assert!(out.y.agreement(&approx) >= p.c);
        assert!(out.y.agreement(&approx) >= m - 3 * p.k);
        assert_eq!(residual(&p.generators, &approx), m);
    }
}

#[test]
fn parametrization_is_injective_on_the_free_block() {
    let mut r = rng(12);
    for _ in 0..6 {
        let m = r.gen_range(4..=6);
        let inst = reduced_instance(&mut r, 2, m);
        let p = pipeline(&inst.input);
        let d = 10;
        let x = p.universe().local_vars();
        let mut seen: Vec<TruncatedVector<_>> = Vec::new();
        for _ in 0..5 {
            let z = random_poly(&mut r, &x, 3, 5, 2);
            let out = parametrize_solutions(&p, &[z], d).unwrap();
            assert_eq!(residual(&p.generators, &out.y), d);
            assert_contracts(&out.trace, d);
            assert!(out.y.agreement(&TruncatedVector::new(out.y.ring(), p.approx.clone())) >= p.c);
            if !seen.contains(&out.y) {
                seen.push(out.y);
            }
        }
        // z values with distinct low-order terms give distinct solutions
        assert!(seen.len() >= 2);
    }
}

#[test]
fn nonreduced_instances_verify_and_lift() {
    let mut r = rng(13);
    for _ in 0..6 {
        let input = nonreduced_instance(&mut r);
        let p = pipeline(&input);
        assert_eq!((p.e, p.k), (2, 2));
        let d = required_precision(p.e, p.k, p.c) + 2;
        let out = lift_solution(&p, d).unwrap();
        assert_eq!(residual(&p.generators, &out.y), d);
        assert_contracts(&out.trace, d);
    }
}

#[test]
fn problem_files_round_trip() {
    let mut r = rng(14);
    for case in 0..10 {
        let m = r.gen_range(4..=7);
        let inst = reduced_instance(&mut r, 1 + case % 2, m);
        let input = &inst.input;
        let pf = ProblemFile {
            field: None,
            universe: input.universe().clone(),
            j: vec![],
            i: input.algebra.generators.clone(),
            f: input.f_indices.clone(),
            cols: input.minor_cols.clone(),
            n: input.multiplier.clone(),
            yprime: input.approx.clone(),
            k: input.k,
            c: input.c,
            trunc: Some(8),
        };
        let text = render_problem(&pf);
        let parsed = parse_problem(&text).unwrap();
        assert_eq!(render_problem(&parsed), text);
        assert_eq!(parsed.i, pf.i);
        assert_eq!(parsed.yprime, pf.yprime);
        let again = desingularize(&parsed.to_input().unwrap()).unwrap();
        assert_eq!(again.g_poly, desingularize(input).unwrap().g_poly);
    }
}

#[test]
fn roots_are_recovered_on_the_main_unknown() {
    let mut r = rng(15);
    for _ in 0..6 {
        let m = r.gen_range(4..=7);
        let inst = reduced_instance(&mut r, 1, m);
        let p = pipeline(&inst.input);
        let out = lift_solution(&p, 9).unwrap();
        // y' is close to the simple root a*x, so the lift is that root
        assert_eq!(out.y.entries()[0], inst.root[0]);
    }
}
