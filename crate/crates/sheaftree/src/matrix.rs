//! Dense exact matrices over a [`FieldSpec`], with reduced row echelon
//! form, kernels, column spaces, and linear solving.
//!
//! Zero-sized shapes (0×n, n×0) are first-class: degenerate stalks flow
//! through every operation.

use crate::field::{FieldSpec, Scalar};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("entry count {got} does not match shape {rows}x{cols}")]
    EntryCount { rows: usize, cols: usize, got: usize },
    #[error("entry at ({row},{col}) does not belong to the field")]
    ForeignEntry { row: usize, col: usize },
}

/// Row-major dense matrix; every entry belongs to `field`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(
        rows: usize,
        cols: usize,
        field: FieldSpec,
        entries: Vec<Scalar>,
    ) -> Result<Matrix, MatrixError> {
        if entries.len() != rows * cols {
            return Err(MatrixError::EntryCount {
                rows,
                cols,
                got: entries.len(),
            });
        }
        for (i, s) in entries.iter().enumerate() {
            if !field.is_member(s) {
                return Err(MatrixError::ForeignEntry {
                    row: if cols == 0 { 0 } else { i / cols },
                    col: if cols == 0 { 0 } else { i % cols },
                });
            }
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            entries,
        })
    }

    pub fn zero(rows: usize, cols: usize, field: FieldSpec) -> Matrix {
        Matrix {
            rows,
            cols,
            field,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(n: usize, field: FieldSpec) -> Matrix {
        let mut m = Matrix::zero(n, n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        field: FieldSpec,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Matrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Matrix {
            rows,
            cols,
            field,
            entries,
        }
    }

    /// Build from integer literals; handy in tests and fixtures.
    pub fn from_i64(rows: usize, cols: usize, field: FieldSpec, vals: &[i64]) -> Matrix {
        assert_eq!(vals.len(), rows * cols);
        Matrix::from_fn(rows, cols, field, |r, c| field.from_i64(vals[r * cols + c]))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        debug_assert!(r < self.rows && c < self.cols);
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        debug_assert!(r < self.rows && c < self.cols);
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vec(&self, r: usize) -> Vec<Scalar> {
        self.row(r).to_vec()
    }

    pub fn col_vec(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    if r == c {
                        self.at(r, c).is_one()
                    } else {
                        self.at(r, c).is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, self.field, |r, c| self.at(c, r).clone())
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        assert_eq!(self.field, other.field);
        Matrix::from_fn(self.rows, self.cols, self.field, |r, c| {
            self.field.add(self.at(r, c), other.at(r, c))
        })
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        assert_eq!(self.field, other.field);
        Matrix::from_fn(self.rows, self.cols, self.field, |r, c| {
            self.field.sub(self.at(r, c), other.at(r, c))
        })
    }

    pub fn neg(&self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, self.field, |r, c| {
            self.field.neg(self.at(r, c))
        })
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, self.field, |r, c| {
            self.field.mul(self.at(r, c), s)
        })
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in matrix product");
        assert_eq!(self.field, other.field);
        let f = self.field;
        Matrix::from_fn(self.rows, other.cols, f, |r, c| {
            let mut acc = f.zero();
            for k in 0..self.cols {
                acc = f.add(&acc, &f.mul(self.at(r, k), other.at(k, c)));
            }
            acc
        })
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = f.zero();
                for c in 0..self.cols {
                    acc = f.add(&acc, &f.mul(self.at(r, c), &v[c]));
                }
                acc
            })
            .collect()
    }

    /// Paste `block` so its (0,0) entry lands at (`r0`,`c0`).
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols);
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.at(r, c).clone());
            }
        }
    }

    pub fn submatrix(&self, row_idx: &[usize], col_idx: &[usize]) -> Matrix {
        Matrix::from_fn(row_idx.len(), col_idx.len(), self.field, |r, c| {
            self.at(row_idx[r], col_idx[c]).clone()
        })
    }

    /// Stack matrices vertically. All must share column count and field.
    pub fn vstack(field: FieldSpec, cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Matrix::zero(rows, cols, field);
        let mut at = 0;
        for m in parts {
            assert_eq!(m.cols, cols);
            out.paste(at, 0, m);
            at += m.rows;
        }
        out
    }

    /// Place matrices along the diagonal of an otherwise-zero matrix.
    pub fn block_diag(field: FieldSpec, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Matrix::zero(rows, cols, field);
        let (mut r, mut c) = (0, 0);
        for m in parts {
            out.paste(r, c, m);
            r += m.rows;
            c += m.cols;
        }
        out
    }

    /// Reduced row echelon form with pivot columns. Deterministic: the
    /// pivot is the first nonzero entry in each column, scanned in order.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0;
        for col in 0..m.cols {
            if pivot_row >= m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if src != pivot_row {
                for c in 0..m.cols {
                    let a = m.at(src, c).clone();
                    let b = m.at(pivot_row, c).clone();
                    m.set(src, c, b);
                    m.set(pivot_row, c, a);
                }
            }
            let inv = f.inv(m.at(pivot_row, col));
            for c in col..m.cols {
                let v = f.mul(m.at(pivot_row, c), &inv);
                m.set(pivot_row, c, v);
            }
            for r in 0..m.rows {
                if r == pivot_row || m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).clone();
                for c in col..m.cols {
                    let v = f.sub(m.at(r, c), &f.mul(&factor, m.at(pivot_row, c)));
                    m.set(r, c, v);
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        let rank = pivots.len();
        Rref {
            matrix: m,
            pivot_cols: pivots,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Exact determinant by fraction-free-ish Gaussian elimination
    /// (division is exact in a field). Zero-sized matrices have det 1.
    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let f = self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for col in 0..n {
            let Some(src) = (col..n).find(|&r| !m.at(r, col).is_zero()) else {
                return f.zero();
            };
            if src != col {
                det = f.neg(&det);
                for c in 0..n {
                    let a = m.at(src, c).clone();
                    let b = m.at(col, c).clone();
                    m.set(src, c, b);
                    m.set(col, c, a);
                }
            }
            let pivot = m.at(col, col).clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot);
            for r in col + 1..n {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let factor = f.mul(m.at(r, col), &inv);
                for c in col..n {
                    let v = f.sub(m.at(r, c), &f.mul(&factor, m.at(col, c)));
                    m.set(r, c, v);
                }
            }
        }
        det
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Inverse of a square invertible matrix; panics otherwise.
    pub fn inverse(&self) -> Matrix {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let f = self.field;
        let mut aug = Matrix::zero(n, 2 * n, f);
        aug.paste(0, 0, self);
        aug.paste(0, n, &Matrix::identity(n, f));
        let red = aug.rref();
        assert_eq!(red.rank, n, "matrix is not invertible");
        red.matrix
            .submatrix(&(0..n).collect::<Vec<_>>(), &(n..2 * n).collect::<Vec<_>>())
    }

    /// One solution of `self · x = rhs`, or `None` when inconsistent.
    pub fn solve(&self, rhs: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(rhs.len(), self.rows, "right-hand side length mismatch");
        let f = self.field;
        let mut aug = Matrix::zero(self.rows, self.cols + 1, f);
        aug.paste(0, 0, self);
        for r in 0..self.rows {
            aug.set(r, self.cols, rhs[r].clone());
        }
        let red = aug.rref();
        if red.pivot_cols.contains(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (i, &pc) in red.pivot_cols.iter().enumerate() {
            x[pc] = red.matrix.at(i, self.cols).clone();
        }
        Some(x)
    }

    /// Columnwise solve: returns `X` with `self · X = rhs`, or `None`
    /// when any column is inconsistent.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows);
        let mut out = Matrix::zero(self.cols, rhs.cols, self.field);
        for c in 0..rhs.cols {
            let x = self.solve(&rhs.col_vec(c))?;
            for (r, v) in x.into_iter().enumerate() {
                out.set(r, c, v);
            }
        }
        Some(out)
    }

    pub fn render_rows(&self, field: &FieldSpec) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(|s| field.render(s)).collect())
            .collect()
    }
}

/// Result of row reduction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivot_cols: Vec<usize>,
    pub rank: usize,
}
