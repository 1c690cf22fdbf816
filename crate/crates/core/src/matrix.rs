//! Sparse square-or-rectangular matrices over [`Scalar`].

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::Scalar;

#[derive(Clone, Debug, PartialEq, Default)]
pub struct SparseMatrix {
    pub n_rows: usize,
    pub n_cols: usize,
    rows: Vec<BTreeMap<usize, Scalar>>,
}

impl SparseMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        SparseMatrix { n_rows, n_cols, rows: vec![BTreeMap::new(); n_rows] }
    }

    pub fn square(n: usize) -> Self {
        Self::zeros(n, n)
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::square(n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    pub fn from_dense(d: &[Vec<Scalar>]) -> Self {
        let n_cols = d.first().map_or(0, Vec::len);
        let mut m = Self::zeros(d.len(), n_cols);
        for (i, row) in d.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.rows[i].get(&j).cloned().unwrap_or_default()
    }

    /// Store `v` at `(i, j)`; zeros are not stored.
    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < self.n_rows && j < self.n_cols, "entry ({i},{j}) outside {}x{}", self.n_rows, self.n_cols);
        if v.is_zero() {
            self.rows[i].remove(&j);
        } else {
            self.rows[i].insert(j, v);
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &Scalar) {
        let cur = self.get(i, j);
        self.set(i, j, &cur + v);
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.rows.iter().enumerate().flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.nnz() == 0
    }

    pub fn is_exact(&self) -> bool {
        self.entries().all(|(_, _, v)| v.is_exact())
    }

    pub fn mul(&self, o: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.n_cols, o.n_rows, "dimension mismatch in product");
        let mut out = SparseMatrix::zeros(self.n_rows, o.n_cols);
        for (i, row) in self.rows.iter().enumerate() {
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &o.rows[*k] {
                    let e = acc.entry(*j).or_default();
                    *e = &*e + &(a * b);
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.rows[i] = acc;
        }
        out
    }

    pub fn add(&self, o: &SparseMatrix) -> SparseMatrix {
        self.combine(o, &Scalar::one())
    }

    pub fn sub(&self, o: &SparseMatrix) -> SparseMatrix {
        self.combine(o, &Scalar::int(-1))
    }

    fn combine(&self, o: &SparseMatrix, k: &Scalar) -> SparseMatrix {
        assert_eq!((self.n_rows, self.n_cols), (o.n_rows, o.n_cols), "dimension mismatch in sum");
        let mut out = self.clone();
        for (i, j, v) in o.entries() {
            out.add_at(i, j, &(k * v));
        }
        out
    }

    pub fn scale(&self, k: &Scalar) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.n_rows, self.n_cols);
        for (i, j, v) in self.entries() {
            out.set(i, j, k * v);
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.n_cols, self.n_rows);
        for (i, j, v) in self.entries() {
            out.set(j, i, v.conj());
        }
        out
    }

    pub fn commutator(&self, o: &SparseMatrix) -> SparseMatrix {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn trace(&self) -> Scalar {
        (0..self.n_rows.min(self.n_cols)).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries().map(|(_, _, v)| v.abs_f64()).fold(0.0, f64::max)
    }

    /// Largest entry magnitude among the given columns, with its position.
    pub fn max_abs_in_cols(&self, cols: &[usize]) -> (f64, Option<(usize, usize)>) {
        let mut mask = vec![false; self.n_cols];
        for &c in cols {
            mask[c] = true;
        }
        let mut best = (0.0, None);
        for (i, j, v) in self.entries() {
            let a = v.abs_f64();
            if mask[j] && a > best.0 {
                best = (a, Some((i, j)));
            }
        }
        best
    }

    /// Whether the columns in `cols` are exactly zero (exact entries) or
    /// below `tol` (float entries).
    pub fn cols_vanish(&self, cols: &[usize], tol: f64) -> bool {
        let mut mask = vec![false; self.n_cols];
        for &c in cols {
            mask[c] = true;
        }
        self.entries().all(|(_, j, v)| !mask[j] || (!v.is_exact() && v.abs_f64() <= tol))
    }

    pub fn frobenius(&self) -> f64 {
        self.entries().map(|(_, _, v)| v.abs_f64().powi(2)).sum::<f64>().sqrt()
    }

    pub fn to_dense(&self) -> Vec<Vec<Scalar>> {
        let mut d = vec![vec![Scalar::zero(); self.n_cols]; self.n_rows];
        for (i, j, v) in self.entries() {
            d[i][j] = v.clone();
        }
        d
    }

    pub fn to_c64(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.n_rows, self.n_cols);
        for (i, j, v) in self.entries() {
            m[(i, j)] = v.to_c64();
        }
        m
    }

    pub fn from_c64(m: &DMatrix<Complex64>, drop_below: f64) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(m.nrows(), m.ncols());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                if m[(i, j)].norm() > drop_below {
                    out.set(i, j, Scalar::Approx(m[(i, j)]));
                }
            }
        }
        out
    }

    /// Principal submatrix on `idx`.
    pub fn restrict(&self, idx: &[usize]) -> SparseMatrix {
        let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(a, &b)| (b, a)).collect();
        let mut out = SparseMatrix::square(idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (j, v) in &self.rows[i] {
                if let Some(&b) = pos.get(j) {
                    out.set(a, b, v.clone());
                }
            }
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, o: &SparseMatrix) -> SparseMatrix {
        let mut out = SparseMatrix::zeros(self.n_rows + o.n_rows, self.n_cols + o.n_cols);
        for (i, j, v) in self.entries() {
            out.set(i, j, v.clone());
        }
        for (i, j, v) in o.entries() {
            out.set(i + self.n_rows, j + self.n_cols, v.clone());
        }
        out
    }

    /// Equality with exact comparison of exact entries and `eps` otherwise.
    pub fn approx_eq(&self, o: &SparseMatrix, eps: f64) -> bool {
        (self.n_rows, self.n_cols) == (o.n_rows, o.n_cols)
            && self.sub(o).entries().all(|(_, _, v)| !v.is_exact() && v.abs_f64() <= eps)
    }
}

#[cfg(test)]
mod test {
    use super::*;

    #[test]
    fn product_and_adjoint() {
        let mut a = SparseMatrix::square(2);
        a.set(1, 0, Scalar::i());
        let b = a.adjoint();
        assert_eq!(b.get(0, 1), -Scalar::i());
        let p = b.mul(&a);
        assert_eq!(p.get(0, 0), Scalar::one());
        assert_eq!(p.nnz(), 1);
        assert!(a.mul(&a).is_zero());
        assert_eq!(a.commutator(&b).trace(), Scalar::zero());
    }
}
