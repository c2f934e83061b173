//! Subspaces of k^n in canonical (reduced row echelon) form, with sums,
//! intersections, membership, and quotient maps.
//!
//! Canonicalization makes subspace equality structural equality, so every
//! pipeline output is deterministic and cheaply comparable.

use crate::field::{FieldSpec, Scalar};
use crate::matrix::Matrix;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubspaceError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
}

/// A subspace stored as an rref basis matrix whose rows are the basis
/// vectors. Pivot columns strictly increase and no row is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient_dim: usize, field: FieldSpec) -> Subspace {
        Subspace {
            ambient_dim,
            basis: Matrix::zero(0, ambient_dim, field),
        }
    }

    pub fn full(ambient_dim: usize, field: FieldSpec) -> Subspace {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim, field),
        }
    }

    /// Canonicalize a spanning set given as the rows of `m`.
    pub fn from_spanning_rows(m: &Matrix) -> Subspace {
        let red = m.rref();
        let keep: Vec<usize> = (0..red.rank).collect();
        let all_cols: Vec<usize> = (0..m.cols()).collect();
        Subspace {
            ambient_dim: m.cols(),
            basis: red.matrix.submatrix(&keep, &all_cols),
        }
    }

    pub fn from_vectors(
        ambient_dim: usize,
        field: FieldSpec,
        vectors: &[Vec<Scalar>],
    ) -> Subspace {
        let mut m = Matrix::zero(vectors.len(), ambient_dim, field);
        for (r, v) in vectors.iter().enumerate() {
            assert_eq!(v.len(), ambient_dim);
            for (c, s) in v.iter().enumerate() {
                m.set(r, c, s.clone());
            }
        }
        Subspace::from_spanning_rows(&m)
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn field(&self) -> FieldSpec {
        self.basis.field()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        self.basis.row_vec(i)
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }

    /// Coordinates of `v` in the basis, if `v` lies in the subspace.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient_dim);
        self.basis.transpose().solve(v)
    }

    /// Express each row of `m` in the basis; `None` if any row escapes.
    pub fn coords_rows(&self, m: &Matrix) -> Option<Matrix> {
        let mut out = Matrix::zero(m.rows(), self.dim(), self.field());
        for r in 0..m.rows() {
            let c = self.coords(&m.row_vec(r))?;
            for (j, s) in c.into_iter().enumerate() {
                out.set(r, j, s);
            }
        }
        Some(out)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, SubspaceError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(SubspaceError::AmbientMismatch(
                self.ambient_dim,
                other.ambient_dim,
            ));
        }
        let stacked = Matrix::vstack(self.field(), self.ambient_dim, &[&self.basis, &other.basis]);
        Ok(Subspace::from_spanning_rows(&stacked))
    }

    /// Subspace intersection via the kernel of the stacked basis system:
    /// coefficient pairs (x, y) with xᵀA = yᵀB parameterize a∩b.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, SubspaceError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(SubspaceError::AmbientMismatch(
                self.ambient_dim,
                other.ambient_dim,
            ));
        }
        let field = self.field();
        let (da, db) = (self.dim(), other.dim());
        if da == 0 || db == 0 {
            return Ok(Subspace::zero(self.ambient_dim, field));
        }
        // Columns: [coeffs on A | coeffs on B]; rows: ambient coordinates.
        let mut system = Matrix::zero(self.ambient_dim, da + db, field);
        system.paste(0, 0, &self.basis.transpose());
        system.paste(0, da, &other.basis.transpose().neg());
        let null = system.kernel_basis();
        let mut vectors = Vec::with_capacity(null.dim());
        for i in 0..null.dim() {
            let coeffs = null.basis_vector(i);
            let mut v = vec![field.zero(); self.ambient_dim];
            for (j, c) in coeffs[..da].iter().enumerate() {
                for k in 0..self.ambient_dim {
                    v[k] = field.add(&v[k], &field.mul(c, self.basis.at(j, k)));
                }
            }
            vectors.push(v);
        }
        Ok(Subspace::from_vectors(self.ambient_dim, field, &vectors))
    }
}

impl Matrix {
    /// Basis of {v : m·v = 0}, canonicalized. dim = cols − rank.
    pub fn kernel_basis(&self) -> Subspace {
        let field = self.field();
        let red = self.rref();
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; self.cols()];
            for &c in &red.pivot_cols {
                v[c] = true;
            }
            v
        };
        let free_cols: Vec<usize> = (0..self.cols()).filter(|&c| !pivot_set[c]).collect();
        let mut vectors = Vec::with_capacity(free_cols.len());
        for &fc in &free_cols {
            let mut v = vec![field.zero(); self.cols()];
            v[fc] = field.one();
            for (row, &pc) in red.pivot_cols.iter().enumerate() {
                v[pc] = field.neg(red.matrix.at(row, fc));
            }
            vectors.push(v);
        }
        Subspace::from_vectors(self.cols(), field, &vectors)
    }

    /// Span of the columns, canonicalized. dim = rank.
    pub fn column_space(&self) -> Subspace {
        Subspace::from_spanning_rows(&self.transpose())
    }
}

/// Projection/section pair presenting k^ambient / sub.
///
/// `proj` has `ambient − dim(sub)` rows and kernel exactly `sub`;
/// `section` satisfies `proj · section = I`. Quotient coordinates are the
/// non-pivot coordinates of the subspace basis.
pub fn quotient_map(
    ambient_dim: usize,
    sub: &Subspace,
) -> Result<(Matrix, Matrix), SubspaceError> {
    if sub.ambient_dim() != ambient_dim {
        return Err(SubspaceError::AmbientMismatch(ambient_dim, sub.ambient_dim()));
    }
    let field = sub.field();
    let red = sub.basis().rref();
    let pivots = &red.pivot_cols;
    let mut is_pivot = vec![false; ambient_dim];
    for &c in pivots {
        is_pivot[c] = true;
    }
    let complement: Vec<usize> = (0..ambient_dim).filter(|&c| !is_pivot[c]).collect();
    let qdim = complement.len();
    let mut proj = Matrix::zero(qdim, ambient_dim, field);
    for (r, &cc) in complement.iter().enumerate() {
        proj.set(r, cc, field.one());
        for (j, &pc) in pivots.iter().enumerate() {
            proj.set(r, pc, field.neg(red.matrix.at(j, cc)));
        }
    }
    let mut section = Matrix::zero(ambient_dim, qdim, field);
    for (r, &cc) in complement.iter().enumerate() {
        section.set(cc, r, field.one());
    }
    Ok((proj, section))
}
