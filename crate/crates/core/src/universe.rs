//! The variable universe of a session.
//!
//! Variables live in disjoint blocks: the local variables `x` of the base
//! ring, the unknowns `Y`, the new variables `T` of the smooth presentation
//! and three auxiliaries (Taylor marker, Rabinowitsch variable, elimination
//! variable). Only the `x` block is local; every other block is global.

use thiserror::Error;

use crate::poly::{MonomialOrder, Polynomial, Var};
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum VarKind {
    Local,
    Unknown,
    Auxiliary,
    Marker,
    Rabinowitsch,
    Elimination,
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum UniverseError {
    #[error("variable `{0}` is declared twice")]
    Duplicate(String),
    #[error("`{0}` is not a valid variable name")]
    BadName(String),
    #[error("unknown variable `{0}`")]
    Unknown(String),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Universe {
    names: Vec<String>,
    kinds: Vec<VarKind>,
    n_local: usize,
    n_unknown: usize,
    n_aux: usize,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Universe {
    /// Declares `x` and `Y`; one `T` variable per unknown is added, named
    /// `T` (single unknown) or `T1..Tn`, with underscores appended on clashes.
    pub fn new<S: AsRef<str>>(local: &[S], unknowns: &[S]) -> Result<Self, UniverseError> {
        let taken: Vec<&str> = local.iter().chain(unknowns).map(AsRef::as_ref).collect();
        let n = unknowns.len();
        let t_names: Vec<String> = (1..=n)
            .map(|i| {
                let mut name = if n == 1 { "T".to_string() } else { format!("T{i}") };
                while taken.contains(&name.as_str()) {
                    name.push('_');
                }
                name
            })
            .collect();
        Self::with_aux_names(local, unknowns, &t_names)
    }

    /// Like [`Universe::new`] but with explicit names for the `T` block.
    pub fn with_aux_names<S: AsRef<str>, R: AsRef<str>>(
        local: &[S],
        unknowns: &[S],
        aux: &[R],
    ) -> Result<Self, UniverseError> {
        let mut names: Vec<String> = Vec::new();
        let mut kinds = Vec::new();
        let blocks: [(Vec<&str>, VarKind); 3] = [
            (local.iter().map(AsRef::as_ref).collect(), VarKind::Local),
            (unknowns.iter().map(AsRef::as_ref).collect(), VarKind::Unknown),
            (aux.iter().map(AsRef::as_ref).collect(), VarKind::Auxiliary),
        ];
        for (block, kind) in blocks {
            for name in block {
                if !valid_name(name) {
                    return Err(UniverseError::BadName(name.to_string()));
                }
                if names.iter().any(|n| n == name) {
                    return Err(UniverseError::Duplicate(name.to_string()));
                }
                names.push(name.to_string());
                kinds.push(kind);
            }
        }
        // reserved names are not valid identifiers, so they never clash
        for (name, kind) in [("@D", VarKind::Marker), ("@u", VarKind::Rabinowitsch), ("@t", VarKind::Elimination)] {
            names.push(name.to_string());
            kinds.push(kind);
        }
        Ok(Universe { names, kinds, n_local: local.len(), n_unknown: unknowns.len(), n_aux: aux.len() })
    }

    fn block(&self, start: usize, len: usize) -> Vec<Var> {
        (start..start + len).map(|i| Var(i as u32)).collect()
    }

    pub fn local_vars(&self) -> Vec<Var> {
        self.block(0, self.n_local)
    }

    pub fn unknown_vars(&self) -> Vec<Var> {
        self.block(self.n_local, self.n_unknown)
    }

    pub fn aux_vars(&self) -> Vec<Var> {
        self.block(self.n_local + self.n_unknown, self.n_aux)
    }

    fn special(&self, kind: VarKind) -> Var {
        Var(self.kinds.iter().position(|&k| k == kind).expect("reserved variable") as u32)
    }

    /// Marker variable for Taylor expansions.
    pub fn marker(&self) -> Var {
        self.special(VarKind::Marker)
    }

    /// Variable `u` adjoined with `1 - u*s` to invert `s`.
    pub fn rabinowitsch(&self) -> Var {
        self.special(VarKind::Rabinowitsch)
    }

    /// Variable used to intersect ideals by elimination.
    pub fn elimination(&self) -> Var {
        self.special(VarKind::Elimination)
    }

    pub fn kind(&self, v: Var) -> VarKind {
        self.kinds[v.0 as usize]
    }

    pub fn is_local(&self, v: Var) -> bool {
        self.kind(v) == VarKind::Local
    }

    pub fn name(&self, v: Var) -> &str {
        &self.names[v.0 as usize]
    }

    pub fn lookup(&self, name: &str) -> Option<Var> {
        self.names.iter().position(|n| n == name).map(|i| Var(i as u32))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// The order realizing `k[x]_(x)[Y, T, ...]`: global blocks first,
    /// local `x` block second.
    pub fn order(&self) -> MonomialOrder {
        MonomialOrder::product((0..self.names.len() as u32).map(Var).filter(|&v| !self.is_local(v)))
    }

    pub fn partial_derivative<F: Scalar>(&self, p: &Polynomial<F>, name: &str) -> Result<Polynomial<F>, UniverseError> {
        let v = self.lookup(name).ok_or_else(|| UniverseError::Unknown(name.to_string()))?;
        Ok(p.derivative(v))
    }
}
