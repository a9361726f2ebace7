//! Standard bases for arbitrary monomial orders.
//!
//! Reduction is Mora's weak normal form: reducers are chosen by minimal
//! ecart and the running remainder is appended to the reducer set whenever
//! the chosen reducer has larger ecart. For a standard basis `S` of `I` the
//! weak normal form of `p` is zero exactly when `p` lies in `I` localized at
//! the units of the order (polynomials with leading monomial 1).
//!
//! Every routine can carry cofactor vectors along, which yields explicit
//! membership certificates `u*p = sum c_i g_i + r` with `u` a unit.

use std::cmp::Ordering;

use crate::poly::{Monomial, MonomialOrder, Polynomial};
use crate::scalar::Scalar;

/// Terms sorted from largest to smallest under the active order.
#[derive(Clone, Debug)]
struct Sorted<F> {
    terms: Vec<(Monomial, F)>,
}

impl<F: Scalar> Sorted<F> {
    fn new(p: &Polynomial<F>, order: &MonomialOrder) -> Self {
        Sorted { terms: p.sorted_terms(order) }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lead(&self) -> &(Monomial, F) {
        &self.terms[0]
    }

    fn ecart(&self) -> u32 {
        let deg = self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0);
        deg - self.lead().0.degree()
    }

    /// `self - c * m * other`, merging in order.
    fn sub_scaled(&self, c: &F, m: &Monomial, other: &Sorted<F>, order: &MonomialOrder) -> Sorted<F> {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(n, d)| (n.mul(m), -(d.clone() * c.clone()))).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some((ma, _)), Some((mb, _))) => order.compare(ma, mb),
            };
            match ord {
                Ordering::Greater => out.push(a.next().expect("peeked").clone()),
                Ordering::Less => out.push(b.next().expect("peeked")),
                Ordering::Equal => {
                    let (ma, ca) = a.next().expect("peeked");
                    let (_, cb) = b.next().expect("peeked");
                    let s = ca.clone() + cb;
                    if !s.is_zero() {
                        out.push((ma.clone(), s));
                    }
                }
            }
        }
        Sorted { terms: out }
    }

    fn scale(&mut self, c: &F) {
        for (_, a) in &mut self.terms {
            *a = a.clone() * c.clone();
        }
    }

    fn to_poly(&self) -> Polynomial<F> {
        Polynomial::from_terms(self.terms.iter().cloned())
    }
}

/// A polynomial together with its cofactors with respect to a fixed list of
/// slots: `poly = sum cof[i] * slot[i]`. An empty cofactor vector means the
/// element is not tracked.
#[derive(Clone, Debug)]
struct Tracked<F> {
    poly: Sorted<F>,
    cof: Vec<Polynomial<F>>,
}

impl<F: Scalar> Tracked<F> {
    fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    fn lm(&self) -> &Monomial {
        &self.poly.lead().0
    }

    /// One reduction step `self - (lc/lc_g) * (lm/lm_g) * g`.
    fn reduce_by(&self, g: &Tracked<F>, order: &MonomialOrder) -> Tracked<F> {
        let (lm, lc) = self.poly.lead();
        let (gm, gc) = g.poly.lead();
        let m = lm.div(gm).expect("reducer divides the leading monomial");
        let k = lc.clone() / gc.clone();
        self.combine(&k, &m, g, order)
    }

    fn combine(&self, k: &F, m: &Monomial, g: &Tracked<F>, order: &MonomialOrder) -> Tracked<F> {
        let poly = self.poly.sub_scaled(k, m, &g.poly, order);
        let cof = if self.cof.is_empty() {
            Vec::new()
        } else {
            self.cof.iter().zip(&g.cof).map(|(a, b)| a - &b.mul_term(k, m)).collect()
        };
        Tracked { poly, cof }
    }

    fn make_monic(&mut self) {
        if self.is_zero() {
            return;
        }
        let inv = F::one() / self.poly.lead().1.clone();
        if inv.is_one() {
            return;
        }
        self.poly.scale(&inv);
        for c in &mut self.cof {
            *c = c.scale(&inv);
        }
    }
}

fn nf_mora<F: Scalar>(mut h: Tracked<F>, basis: &[Tracked<F>], order: &MonomialOrder) -> Tracked<F> {
    let mut extra: Vec<Tracked<F>> = Vec::new();
    loop {
        if h.is_zero() {
            return h;
        }
        let lm = h.lm();
        let pick = basis
            .iter()
            .chain(extra.iter())
            .enumerate()
            .filter(|(_, g)| g.lm().divides(lm))
            .min_by_key(|(_, g)| g.poly.ecart())
            .map(|(i, _)| i);
        let Some(i) = pick else {
            return h;
        };
        let g = if i < basis.len() { &basis[i] } else { &extra[i - basis.len()] };
        let next = h.reduce_by(g, order);
        if g.poly.ecart() > h.poly.ecart() {
            extra.push(h);
        }
        h = next;
    }
}

fn spoly<F: Scalar>(f: &Tracked<F>, g: &Tracked<F>, order: &MonomialOrder) -> Tracked<F> {
    let lcm = f.lm().lcm(g.lm());
    let mf = lcm.div(f.lm()).expect("lcm");
    let mg = lcm.div(g.lm()).expect("lcm");
    let cf = F::one() / f.poly.lead().1.clone();
    let cg = F::one() / g.poly.lead().1.clone();
    let zero = Tracked {
        poly: Sorted { terms: Vec::new() },
        cof: if f.cof.is_empty() { Vec::new() } else { vec![Polynomial::zero(); f.cof.len()] },
    };
    let left = zero.combine(&(-cf), &mf, f, order);
    left.combine(&cg, &mg, g, order)
}

fn standard_basis_tracked<F: Scalar>(gens: Vec<Tracked<F>>, order: &MonomialOrder) -> Vec<Tracked<F>> {
    let mut basis: Vec<Tracked<F>> = Vec::new();
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    let push = |mut h: Tracked<F>, basis: &mut Vec<Tracked<F>>, pairs: &mut Vec<(usize, usize)>| {
        h.make_monic();
        let j = basis.len();
        pairs.extend((0..j).map(|i| (i, j)));
        basis.push(h);
    };
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let unit = g.lm().is_one();
        push(g, &mut basis, &mut pairs);
        if unit {
            return minimalize(basis);
        }
    }
    while !pairs.is_empty() {
        // normal selection: smallest lcm degree first, oldest first on ties
        let (pos, _) = pairs
            .iter()
            .enumerate()
            .min_by_key(|(_, &(i, j))| basis[i].lm().lcm(basis[j].lm()).degree())
            .expect("nonempty");
        let (i, j) = pairs.remove(pos);
        if basis[i].lm().is_coprime(basis[j].lm()) {
            continue;
        }
        let s = spoly(&basis[i], &basis[j], order);
        let h = nf_mora(s, &basis, order);
        if !h.is_zero() {
            let unit = h.lm().is_one();
            push(h, &mut basis, &mut pairs);
            if unit {
                return minimalize(vec![basis.pop().expect("just pushed")]);
            }
        }
    }
    minimalize(basis)
}

/// Drops elements whose leading monomial is divisible by an earlier (or
/// strictly smaller) leading monomial.
fn minimalize<F: Scalar>(basis: Vec<Tracked<F>>) -> Vec<Tracked<F>> {
    let keep: Vec<bool> = (0..basis.len())
        .map(|i| {
            !(0..basis.len())
                .any(|j| j != i && basis[j].lm().divides(basis[i].lm()) && (basis[j].lm() != basis[i].lm() || j < i))
        })
        .collect();
    basis.into_iter().zip(keep).filter(|(_, k)| *k).map(|(b, _)| b).collect()
}

fn untracked<F: Scalar>(p: &Polynomial<F>, order: &MonomialOrder) -> Tracked<F> {
    Tracked { poly: Sorted::new(p, order), cof: Vec::new() }
}

/// A standard basis of the ideal generated by `gens` in the localization of
/// the polynomial ring determined by `order`.
pub fn standard_basis<F: Scalar>(gens: &[Polynomial<F>], order: &MonomialOrder) -> Vec<Polynomial<F>> {
    let tracked = gens.iter().map(|g| untracked(g, order)).collect();
    standard_basis_tracked(tracked, order).iter().map(|t| t.poly.to_poly()).collect()
}

/// Mora's weak normal form of `p` with respect to `basis`.
pub fn weak_normal_form<F: Scalar>(p: &Polynomial<F>, basis: &[Polynomial<F>], order: &MonomialOrder) -> Polynomial<F> {
    let basis: Vec<Tracked<F>> = basis.iter().filter(|b| !b.is_zero()).map(|b| untracked(b, order)).collect();
    nf_mora(untracked(p, order), &basis, order).poly.to_poly()
}

/// Identity `unit * p = sum cofactors[i] * gens[i] + remainder`, with `unit`
/// having leading monomial 1.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation<F> {
    pub unit: Polynomial<F>,
    pub cofactors: Vec<Polynomial<F>>,
    pub remainder: Polynomial<F>,
}

impl<F: Scalar> Representation<F> {
    /// Re-expands the identity; this is the certificate check.
    pub fn holds(&self, p: &Polynomial<F>, gens: &[Polynomial<F>], order: &MonomialOrder) -> bool {
        if self.cofactors.len() != gens.len() {
            return false;
        }
        if self.unit.leading_monomial(order).is_none_or(|m| !m.is_one()) {
            return false;
        }
        let mut rhs = self.remainder.clone();
        for (c, g) in self.cofactors.iter().zip(gens) {
            if !c.is_zero() {
                rhs += c * g;
            }
        }
        &self.unit * p == rhs
    }
}

/// Divides `p` by a standard basis of `(gens)` while tracking cofactors
/// relative to `gens`.
pub fn represent<F: Scalar>(p: &Polynomial<F>, gens: &[Polynomial<F>], order: &MonomialOrder) -> Representation<F> {
    let slots = gens.len() + 1;
    let mut seeds = Vec::with_capacity(gens.len());
    for (i, g) in gens.iter().enumerate() {
        let mut cof = vec![Polynomial::zero(); slots];
        cof[i] = Polynomial::one();
        seeds.push(Tracked { poly: Sorted::new(g, order), cof });
    }
    let basis = standard_basis_tracked(seeds, order);
    let mut cof = vec![Polynomial::zero(); slots];
    cof[gens.len()] = Polynomial::one();
    let start = Tracked { poly: Sorted::new(p, order), cof };
    let done = nf_mora(start, &basis, order);
    // done = unit * p + sum c_i g_i
    let mut cof = done.cof;
    let unit = cof.pop().expect("slot for p");
    Representation { unit, cofactors: cof.into_iter().map(|c| -c).collect(), remainder: done.poly.to_poly() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;
    use crate::scalar::Rational;

    type P = Polynomial<Rational>;
    const X: Var = Var(0);
    const Z: Var = Var(1);

    fn v(x: Var) -> P {
        P::var(x)
    }
    fn c(k: i64) -> P {
        P::from_int(k)
    }

    #[test]
    fn unit_multiple_is_detected_locally() {
        let local = MonomialOrder::neg_degrevlex();
        let sb = standard_basis(&[&v(X) - &v(X).pow(2)], &local);
        assert_eq!(sb.len(), 1);
        assert_eq!(sb[0].leading_monomial(&local), Some(&Monomial::var(X)));
        assert!(weak_normal_form(&v(X), &sb, &local).is_zero());
        // globally x is not a multiple of x - x^2
        let global = MonomialOrder::degrevlex();
        let gb = standard_basis(&[&v(X) - &v(X).pow(2)], &global);
        assert!(!weak_normal_form(&v(X), &gb, &global).is_zero());
    }

    #[test]
    fn zero_ideal_has_empty_basis() {
        assert!(standard_basis::<Rational>(&[P::zero()], &MonomialOrder::neg_degrevlex()).is_empty());
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let local = MonomialOrder::neg_degrevlex();
        let gens = vec![v(Z).pow(2), &v(Z) * &v(X)];
        let sb = standard_basis(&gens, &local);
        assert_eq!(sb, gens);
        assert!(weak_normal_form(&v(Z).pow(3), &sb, &local).is_zero());
        assert_eq!(weak_normal_form(&c(1), &sb, &local), c(1));
    }

    #[test]
    fn certificate_for_e1_cofactor() {
        let local = MonomialOrder::neg_degrevlex();
        let d = &(&c(2) * &v(X)) + &(&c(2) * &v(X).pow(3));
        let d2 = d.pow(2);
        let p = &(&c(2) * &v(X).pow(4)) + &v(X).pow(6);
        let rep = represent(&p, std::slice::from_ref(&d2), &local);
        assert!(rep.remainder.is_zero());
        assert!(rep.holds(&p, &[d2], &local));
    }

    #[test]
    fn certificate_reports_remainder_for_non_members() {
        let local = MonomialOrder::neg_degrevlex();
        let rep = represent(&c(1), &[v(X)], &local);
        assert_eq!(rep.remainder, c(1));
        assert!(rep.holds(&c(1), &[v(X)], &local));
    }
}
