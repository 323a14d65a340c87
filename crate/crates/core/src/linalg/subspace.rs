use num_traits::Zero;

use super::{add_scaled, nullspace, rref, Matrix, Rational};
use crate::error::{Error, Result};

/// A subspace of `Q^n` stored by its reduced row echelon basis. Two subspaces
/// are equal exactly when their canonical bases are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self { ambient, basis: Matrix::zeros(0, ambient), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self { ambient, basis: Matrix::identity(ambient), pivots: (0..ambient).collect() }
    }

    /// Span of arbitrary (possibly dependent) vectors.
    pub fn from_vectors(ambient: usize, vectors: Vec<Vec<Rational>>) -> Result<Self> {
        let m = Matrix::from_rows(ambient, vectors)?;
        Ok(Self::row_space(&m))
    }

    pub fn row_space(m: &Matrix) -> Self {
        let e = rref(m);
        let rows = (0..e.rank).map(|r| e.matrix.row(r).to_vec()).collect();
        let basis = Matrix::from_rows(m.cols(), rows).expect("rref rows keep their width");
        Self { ambient: m.cols(), basis, pivots: e.pivots }
    }

    /// Span of coordinate axes.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let mut idx = indices.to_vec();
        idx.sort_unstable();
        idx.dedup();
        let rows = idx.iter().map(|&i| super::unit_vec(ambient, i)).collect();
        let basis = Matrix::from_rows(ambient, rows).expect("unit vectors have ambient length");
        Self { ambient, basis, pivots: idx }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.to_rows()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if n == self.ambient {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.ambient, found: n })
        }
    }

    /// `v` minus its elimination against the canonical basis.
    pub fn residual(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        self.check_len(v.len())?;
        let mut r = v.to_vec();
        for (row, &p) in self.basis.row_iter().zip(&self.pivots) {
            if !r[p].is_zero() {
                let c = -r[p].clone();
                add_scaled(&mut r, &c, row);
            }
        }
        Ok(r)
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        Ok(self.residual(v)?.iter().all(Zero::is_zero))
    }

    /// Coordinates of `v` in the canonical basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }

    /// Linear combination of the canonical basis.
    pub fn combine(&self, coords: &[Rational]) -> Vec<Rational> {
        assert_eq!(coords.len(), self.dim());
        let mut v = super::zero_vec(self.ambient);
        for (c, row) in coords.iter().zip(self.basis.row_iter()) {
            add_scaled(&mut v, c, row);
        }
        v
    }

    fn check_same_ambient(&self, other: &Subspace) -> Result<()> {
        self.check_len(other.ambient)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other)?;
        Ok(Subspace::row_space(&self.basis.vstack(&other.basis)?))
    }

    /// Intersection through the kernel of `[A^T | -B^T]`: a kernel vector
    /// `(x, y)` gives the common element `x A = y B`.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        let (da, db) = (self.dim(), other.dim());
        let mut system = Matrix::zeros(self.ambient, da + db);
        for c in 0..self.ambient {
            for i in 0..da {
                system.set(c, i, self.basis.get(i, c).clone());
            }
            for j in 0..db {
                system.set(c, da + j, -other.basis.get(j, c).clone());
            }
        }
        let kernel = nullspace(&system);
        let common = kernel.basis.row_iter().map(|xy| self.combine(&xy[..da])).collect();
        Subspace::from_vectors(self.ambient, common)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_same_ambient(other)?;
        for row in self.basis.row_iter() {
            if !other.contains(row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Whether `whole` is the internal direct sum of `parts`: dimensions add up
/// and the parts together span `whole`.
pub fn is_direct_sum(parts: &[Subspace], whole: &Subspace) -> Result<bool> {
    let mut total = Subspace::zero(whole.ambient_dim());
    let mut dims = 0;
    for p in parts {
        total = total.sum(p)?;
        dims += p.dim();
    }
    Ok(dims == whole.dim() && total == *whole)
}
