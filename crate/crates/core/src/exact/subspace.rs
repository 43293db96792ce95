use alloc::vec::Vec;
use core::fmt;

use super::matrix::Matrix;
use super::scalar::{Field, Scalar};
use super::vector;
use crate::error::{Error, Result};

/// A linear subspace of `F^n`, stored as the nonzero rows of the RREF of any
/// spanning set. The representation is canonical, so `==` is subspace
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Subspace {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(field, 0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Subspace {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Span of arbitrary vectors of `F^ambient_dim`.
    pub fn span(field: Field, ambient_dim: usize, vectors: &[Vec<Scalar>]) -> Result<Subspace> {
        let m = Matrix::from_rows(field, ambient_dim, vectors.to_vec())?;
        Ok(Subspace::row_space(&m))
    }

    /// Span of the standard basis vectors with the given 0-based indices.
    pub fn coordinate(
        field: Field,
        ambient_dim: usize,
        indices: impl IntoIterator<Item = usize>,
    ) -> Subspace {
        let vectors: Vec<_> = indices
            .into_iter()
            .map(|i| vector::unit(field, ambient_dim, i))
            .collect();
        Subspace::span(field, ambient_dim, &vectors).expect("unit vectors are well formed")
    }

    pub fn row_space(m: &Matrix) -> Subspace {
        let r = m.rref();
        let basis = Matrix::from_rows(m.field(), m.cols(), r.matrix.to_rows()[..r.rank].to_vec())
            .expect("rows of an RREF share its shape");
        Subspace {
            ambient_dim: m.cols(),
            basis,
            pivots: r.pivots,
        }
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    /// RREF basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[Scalar]> + '_ {
        self.basis.row_vectors()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the RREF basis, `None` if `v` lies outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if v.len() != self.ambient_dim {
            return Err(Error::AmbientMismatch);
        }
        if v.iter().any(|x| x.field() != self.field()) {
            return Err(Error::FieldMismatch);
        }
        // in RREF the coefficient of row k is the entry of v at pivot k
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rebuilt = vector::zero(self.field(), self.ambient_dim);
        for (c, row) in coords.iter().zip(self.basis_vectors()) {
            vector::axpy(&mut rebuilt, c, row);
        }
        Ok((rebuilt.as_slice() == v).then_some(coords))
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        Ok(self.coordinates(v)?.is_some())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        for v in self.basis_vectors() {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut rows = self.basis.to_rows();
        rows.extend(other.basis.to_rows());
        Subspace::span(self.field(), self.ambient_dim, &rows)
    }

    /// Intersection, as the common solution set of both annihilators.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut rows = self.annihilator().to_rows();
        rows.extend(other.annihilator().to_rows());
        let constraints = Matrix::from_rows(self.field(), self.ambient_dim, rows)?;
        Ok(constraints.kernel())
    }

    /// Rows `c` with `c . x = 0` exactly for `x` in this subspace.
    pub fn annihilator(&self) -> Matrix {
        self.basis.kernel().basis.clone()
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim {
            return Err(Error::AmbientMismatch);
        }
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(())
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("span{}");
        }
        f.write_str("span{")?;
        for (k, v) in self.basis_vectors().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            f.write_str("(")?;
            for (i, x) in v.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        f.write_str("}")
    }
}
