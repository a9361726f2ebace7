use std::cmp::Ordering;
use std::fmt;

/// A variable, identified by its index in a [`crate::Universe`].
///
/// Lower indices rank higher in the reverse-lexicographic tie-breaks.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(pub u32);

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// A power product, stored sparsely as `(variable, exponent)` pairs sorted by
/// variable with no zero exponents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn var_pow(v: Var, e: u32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Monomial(vec![(v, e)])
        }
    }

    /// Builds a monomial from arbitrary pairs, merging repeated variables.
    pub fn from_pairs<I: IntoIterator<Item = (Var, u32)>>(pairs: I) -> Self {
        let mut v: Vec<(Var, u32)> = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        v.sort_by_key(|&(var, _)| var);
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(v.len());
        for (var, e) in v {
            match out.last_mut() {
                Some((last, le)) if *last == var => *le += e,
                _ => out.push((var, e)),
            }
        }
        Monomial(out)
    }

    pub fn pairs(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        match self.0.binary_search_by_key(&v, |&(w, _)| w) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    /// Total degree counted only over variables accepted by `pred`.
    pub fn degree_in(&self, pred: impl Fn(Var) -> bool) -> u32 {
        self.0.iter().filter(|&&(v, _)| pred(v)).map(|&(_, e)| e).sum()
    }

    /// The sub-monomial on the variables accepted by `pred`.
    pub fn restrict(&self, pred: impl Fn(Var) -> bool) -> Monomial {
        Monomial(self.0.iter().copied().filter(|&(v, _)| pred(v)).collect())
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, u32::max)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        self.zip_with(other, u32::min)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return false,
            }
        }
        true
    }

    /// True when `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        let mut j = 0;
        for &(v, e) in &self.0 {
            while j < other.0.len() && other.0[j].0 < v {
                j += 1;
            }
            if j == other.0.len() || other.0[j].0 != v || other.0[j].1 < e {
                return false;
            }
            j += 1;
        }
        true
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut out = Vec::with_capacity(self.0.len());
        for &(v, e) in &self.0 {
            let d = e - other.exponent(v);
            if d > 0 {
                out.push((v, d));
            }
        }
        Some(Monomial(out))
    }

    /// Removes `v` and returns its former exponent.
    pub fn without(&self, v: Var) -> (Monomial, u32) {
        let e = self.exponent(v);
        (Monomial(self.0.iter().copied().filter(|&(w, _)| w != v).collect()), e)
    }

    fn zip_with(&self, other: &Monomial, op: impl Fn(u32, u32) -> u32) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            let (v, e) = if j == other.0.len() || (i < self.0.len() && self.0[i].0 < other.0[j].0) {
                let (v, a) = self.0[i];
                i += 1;
                (v, op(a, 0))
            } else if i == self.0.len() || other.0[j].0 < self.0[i].0 {
                let (v, b) = other.0[j];
                j += 1;
                (v, op(0, b))
            } else {
                let (v, a) = self.0[i];
                let b = other.0[j].1;
                i += 1;
                j += 1;
                (v, op(a, b))
            };
            if e > 0 {
                out.push((v, e));
            }
        }
        Monomial(out)
    }
}

/// All monomials of total degree exactly `degree` in `vars`, in a fixed order.
pub fn monomials_of_degree(vars: &[Var], degree: u32) -> Vec<Monomial> {
    fn rec(vars: &[Var], degree: u32, acc: &mut Vec<(Var, u32)>, out: &mut Vec<Monomial>) {
        match vars.split_first() {
            None => {
                if degree == 0 {
                    out.push(Monomial::from_pairs(acc.iter().copied()));
                }
            }
            Some((&v, rest)) => {
                if rest.is_empty() {
                    acc.push((v, degree));
                    rec(rest, 0, acc, out);
                    acc.pop();
                } else {
                    for e in (0..=degree).rev() {
                        acc.push((v, e));
                        rec(rest, degree - e, acc, out);
                        acc.pop();
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(vars, degree, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const X: Var = Var(0);
    const Z: Var = Var(1);

    #[test]
    fn arithmetic() {
        let a = Monomial::from_pairs([(X, 2), (Z, 1)]);
        let b = Monomial::from_pairs([(Z, 3)]);
        assert_eq!(a.mul(&b), Monomial::from_pairs([(X, 2), (Z, 4)]));
        assert_eq!(a.lcm(&b), Monomial::from_pairs([(X, 2), (Z, 3)]));
        assert_eq!(a.gcd(&b), Monomial::var(Z));
        assert!(Monomial::var(Z).divides(&a));
        assert!(!b.divides(&a));
        assert_eq!(a.div(&Monomial::var(X)), Some(Monomial::from_pairs([(X, 1), (Z, 1)])));
        assert!(Monomial::var(X).is_coprime(&b));
    }

    #[test]
    fn no_zero_exponents_stored() {
        let m = Monomial::from_pairs([(X, 0), (Z, 2), (Z, 1)]);
        assert_eq!(m.pairs(), &[(Z, 3)]);
        assert_eq!(m.div(&m), Some(Monomial::one()));
    }

    #[test]
    fn enumerates_degree_k() {
        let ms = monomials_of_degree(&[X, Z], 3);
        assert_eq!(ms.len(), 4);
        assert!(ms.iter().all(|m| m.degree() == 3));
        assert_eq!(monomials_of_degree(&[X, Z, Var(2)], 2).len(), 6);
        assert_eq!(monomials_of_degree(&[], 0), vec![Monomial::one()]);
    }
}
