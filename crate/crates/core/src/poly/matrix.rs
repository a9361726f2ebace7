use std::collections::BTreeMap;

use thiserror::Error;

use super::monomial::Var;
use super::polynomial::Polynomial;
use crate::scalar::Scalar;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("matrix is {rows}x{cols}, expected a square matrix")]
pub struct NotSquare {
    pub rows: usize,
    pub cols: usize,
}

/// A dense matrix with polynomial entries, stored row-major.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial<F>>,
}

impl<F: Scalar> PolyMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        PolyMatrix { rows, cols, entries: vec![Polynomial::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Polynomial::one())
    }

    /// `p * Id_n`.
    pub fn scalar(n: usize, p: Polynomial<F>) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, p.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Polynomial<F>>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        PolyMatrix { rows: r, cols: c, entries: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial<F> {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Polynomial<F>) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn row(&self, i: usize) -> &[Polynomial<F>] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = &Polynomial<F>> {
        self.entries.iter()
    }

    pub fn map(&self, f: impl Fn(&Polynomial<F>) -> Polynomial<F>) -> Self {
        PolyMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }

    pub fn scale(&self, p: &Polynomial<F>) -> Self {
        self.map(|e| e * p)
    }

    pub fn substitute(&self, bindings: &BTreeMap<Var, Polynomial<F>>) -> Self {
        self.map(|e| e.substitute(bindings))
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Polynomial::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = rhs.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Polynomial<F>]) -> Vec<Polynomial<F>> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Polynomial::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    /// Submatrix on the given rows and columns, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out.set(a, b, self.get(i, j).clone());
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<Polynomial<F>, NotSquare> {
        self.require_square()?;
        let n = self.rows;
        if n == 0 {
            return Ok(Polynomial::one());
        }
        let mut a: Vec<Vec<Polynomial<F>>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut prev = Polynomial::one();
        let mut negate = false;
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        negate = !negate;
                    }
                    None => return Ok(Polynomial::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.exact_divide(&prev).expect("Bareiss division is exact");
                }
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }

    /// The adjugate, satisfying `H adj(H) = adj(H) H = det(H) Id`.
    pub fn adjugate(&self) -> Result<Self, NotSquare> {
        self.require_square()?;
        let n = self.rows;
        if n == 1 {
            return Ok(Self::identity(1));
        }
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
                let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
                let minor = self.select(&rows, &cols).determinant()?;
                out.set(i, j, if (i + j) % 2 == 0 { minor } else { -minor });
            }
        }
        Ok(out)
    }

    fn require_square(&self) -> Result<(), NotSquare> {
        if self.rows == self.cols {
            Ok(())
        } else {
            Err(NotSquare { rows: self.rows, cols: self.cols })
        }
    }
}
