//! Finite-dimensional left Leibniz algebras given by structure constants.
//!
//! Basis indices are 0-based throughout; `b_0, ..., b_{n-1}` is the
//! distinguished basis and vectors are coordinate columns in it.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exact::{vector, Field, Matrix, Scalar, Subspace};

/// A left Leibniz algebra: `[[a,b],c] = [a,[b,c]] - [b,[a,c]]`.
///
/// Only nonzero products `[b_i, b_j]` are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizAlgebra {
    field: Field,
    dim: usize,
    table: BTreeMap<(usize, usize), Vec<Scalar>>,
}

/// Left, right and two-sided centers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Centers {
    pub left: Subspace,
    pub right: Subspace,
    pub two_sided: Subspace,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesKind {
    Lower,
    Upper,
}

/// A central series computed until its first repetition. `terms[k]` is the
/// `(k+1)`-th lower term `γ_{k+1}` or the `k`-th upper term `ζ_k`; the last
/// term repeats its predecessor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralSeries {
    pub kind: SeriesKind,
    pub terms: Vec<Subspace>,
    pub stabilized: bool,
}

impl CentralSeries {
    /// Terms without the trailing repetition.
    pub fn distinct_terms(&self) -> &[Subspace] {
        &self.terms[..self.terms.len() - 1]
    }

    /// Final (stable) term: `γ_∞` or `ζ_∞`.
    pub fn limit(&self) -> &Subspace {
        self.terms.last().expect("series is never empty")
    }
}

impl LeibnizAlgebra {
    /// Builds an algebra from nonzero products `(i, j) -> [b_i, b_j]`,
    /// rejecting tables that violate the left Leibniz identity.
    pub fn new(
        field: Field,
        dim: usize,
        products: impl IntoIterator<Item = ((usize, usize), Vec<Scalar>)>,
    ) -> Result<LeibnizAlgebra> {
        let algebra = LeibnizAlgebra::new_unchecked(field, dim, products)?;
        if let Some((i, j, k)) = algebra.leibniz_violation() {
            return Err(Error::NotLeibniz(i, j, k));
        }
        Ok(algebra)
    }

    /// Validates shapes but not the Leibniz identity. For negative tests.
    #[doc(hidden)]
    pub fn new_unchecked(
        field: Field,
        dim: usize,
        products: impl IntoIterator<Item = ((usize, usize), Vec<Scalar>)>,
    ) -> Result<LeibnizAlgebra> {
        if dim == 0 {
            return Err(Error::BadSpec("dimension must be positive".into()));
        }
        let mut table = BTreeMap::new();
        for ((i, j), v) in products {
            if i >= dim || j >= dim {
                return Err(Error::BadSpec(alloc::format!(
                    "basis index ({i}, {j}) out of range"
                )));
            }
            if v.len() != dim {
                return Err(Error::BadSpec(alloc::format!(
                    "product ({i}, {j}) has {} coordinates, expected {dim}",
                    v.len()
                )));
            }
            if v.iter().any(|x| x.field() != field) {
                return Err(Error::FieldMismatch);
            }
            if table.contains_key(&(i, j)) {
                return Err(Error::BadSpec(alloc::format!(
                    "product ({i}, {j}) given twice"
                )));
            }
            if !vector::is_zero(&v) {
                table.insert((i, j), v);
            }
        }
        Ok(LeibnizAlgebra { field, dim, table })
    }

    pub fn abelian(field: Field, dim: usize) -> Result<LeibnizAlgebra> {
        LeibnizAlgebra::new_unchecked(field, dim, [])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Nonzero structure constants in `(i, j)` order.
    pub fn products(&self) -> impl Iterator<Item = ((usize, usize), &[Scalar])> + '_ {
        self.table.iter().map(|(&k, v)| (k, v.as_slice()))
    }

    /// `[b_i, b_j]`.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<Scalar> {
        self.table
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| vector::zero(self.field, self.dim))
    }

    pub fn zero_vector(&self) -> Vec<Scalar> {
        vector::zero(self.field, self.dim)
    }

    pub fn unit(&self, i: usize) -> Vec<Scalar> {
        vector::unit(self.field, self.dim, i)
    }

    pub fn full_space(&self) -> Subspace {
        Subspace::full(self.field, self.dim)
    }

    pub fn zero_space(&self) -> Subspace {
        Subspace::zero(self.field, self.dim)
    }

    fn check_vector(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.dim || v.iter().any(|x| x.field() != self.field) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(())
    }

    fn check_subspace(&self, s: &Subspace) -> Result<()> {
        if s.ambient_dim() != self.dim || s.field() != self.field {
            return Err(Error::AmbientMismatch);
        }
        Ok(())
    }

    /// `[x, y]`, extended bilinearly from the structure constants.
    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_vector(x)?;
        self.check_vector(y)?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vector();
        for (&(i, j), v) in &self.table {
            if x[i].is_zero() || y[j].is_zero() {
                continue;
            }
            vector::axpy(&mut out, &(&x[i] * &y[j]), v);
        }
        out
    }

    /// First basis triple `(i, j, k)` in lexicographic order on which
    /// `[[b_i,b_j],b_k] = [b_i,[b_j,b_k]] - [b_j,[b_i,b_k]]` fails.
    /// Basis triples suffice by trilinearity.
    pub fn leibniz_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        let zero = self.zero_vector();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let ij = self.table.get(&(i, j));
                    let jk = self.table.get(&(j, k));
                    let ik = self.table.get(&(i, k));
                    if ij.is_none() && jk.is_none() && ik.is_none() {
                        continue;
                    }
                    let lhs = ij.map_or_else(|| zero.clone(), |w| self.bracket_right_basis(w, k));
                    let a = jk.map_or_else(|| zero.clone(), |w| self.bracket_left_basis(i, w));
                    let b = ik.map_or_else(|| zero.clone(), |w| self.bracket_left_basis(j, w));
                    if lhs != vector::sub(&a, &b) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// `[w, b_k]`.
    fn bracket_right_basis(&self, w: &[Scalar], k: usize) -> Vec<Scalar> {
        let mut out = self.zero_vector();
        for (m, c) in w.iter().enumerate() {
            if let (false, Some(v)) = (c.is_zero(), self.table.get(&(m, k))) {
                vector::axpy(&mut out, c, v);
            }
        }
        out
    }

    /// `[b_i, w]`.
    fn bracket_left_basis(&self, i: usize, w: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero_vector();
        for (m, c) in w.iter().enumerate() {
            if let (false, Some(v)) = (c.is_zero(), self.table.get(&(i, m))) {
                vector::axpy(&mut out, c, v);
            }
        }
        out
    }

    pub fn check_left_leibniz(&self) -> bool {
        self.leibniz_violation().is_none()
    }

    /// Matrix of `y -> [x, y]`.
    pub fn left_multiplication(&self, x: &[Scalar]) -> Result<Matrix> {
        self.check_vector(x)?;
        let cols: Vec<_> = (0..self.dim)
            .map(|j| self.bracket_unchecked(x, &self.unit(j)))
            .collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// Matrix of `x -> [x, y]`.
    pub fn right_multiplication(&self, y: &[Scalar]) -> Result<Matrix> {
        self.check_vector(y)?;
        let cols: Vec<_> = (0..self.dim)
            .map(|i| self.bracket_unchecked(&self.unit(i), y))
            .collect();
        Matrix::from_columns(self.field, self.dim, &cols)
    }

    /// Rows of `constraint * [x, b_j]` (when `left`) and `constraint * [b_j, x]`
    /// (when `right`) for every `j`, as linear conditions on `x`.
    fn annihilation_conditions(&self, constraint: &Matrix, left: bool, right: bool) -> Matrix {
        let mut rows = Vec::new();
        for j in 0..self.dim {
            let b = self.unit(j);
            if left {
                let m = self.right_multiplication(&b).expect("basis vector");
                rows.extend((constraint * &m).to_rows());
            }
            if right {
                let m = self.left_multiplication(&b).expect("basis vector");
                rows.extend((constraint * &m).to_rows());
            }
        }
        Matrix::from_rows(self.field, self.dim, rows).expect("rows have width dim")
    }

    pub fn centers(&self) -> Centers {
        let id = Matrix::identity(self.field, self.dim);
        let left = self.annihilation_conditions(&id, true, false).kernel();
        let right = self.annihilation_conditions(&id, false, true).kernel();
        let two_sided = self.annihilation_conditions(&id, true, true).kernel();
        Centers {
            left,
            right,
            two_sided,
        }
    }

    /// `[A, B]`: the span of brackets of basis representatives.
    pub fn product(&self, a: &Subspace, b: &Subspace) -> Result<Subspace> {
        self.check_subspace(a)?;
        self.check_subspace(b)?;
        let mut vectors = Vec::new();
        for u in a.basis_vectors() {
            for v in b.basis_vectors() {
                vectors.push(self.bracket_unchecked(u, v));
            }
        }
        Subspace::span(self.field, self.dim, &vectors)
    }

    /// `[L, L]`.
    pub fn derived(&self) -> Subspace {
        let full = self.full_space();
        self.product(&full, &full).expect("same ambient space")
    }

    /// Span of all squares `[x, x]`, via the polarization
    /// `{[b_i,b_i]} ∪ {[b_i,b_j] + [b_j,b_i] : i < j}`.
    pub fn leib_kernel(&self) -> Subspace {
        let mut vectors = Vec::new();
        for i in 0..self.dim {
            vectors.push(self.basis_bracket(i, i));
            for j in i + 1..self.dim {
                vectors.push(vector::add(
                    &self.basis_bracket(i, j),
                    &self.basis_bracket(j, i),
                ));
            }
        }
        Subspace::span(self.field, self.dim, &vectors).expect("vectors of length dim")
    }

    pub fn lower_central_series(&self) -> CentralSeries {
        let full = self.full_space();
        let mut terms = alloc::vec![full.clone()];
        loop {
            let last = terms.last().expect("nonempty");
            let next = self.product(&full, last).expect("same ambient space");
            let done = &next == last;
            terms.push(next);
            if done {
                break;
            }
        }
        CentralSeries {
            kind: SeriesKind::Lower,
            terms,
            stabilized: true,
        }
    }

    /// `ζ_{k+1} = {x : [x,b_j], [b_j,x] ∈ ζ_k for all j}`, one kernel per step.
    pub fn upper_central_series(&self) -> CentralSeries {
        let mut terms = alloc::vec![self.zero_space()];
        loop {
            let last = terms.last().expect("nonempty");
            let constraint = last.annihilator();
            let next = self
                .annihilation_conditions(&constraint, true, true)
                .kernel();
            let done = &next == last;
            terms.push(next);
            if done {
                break;
            }
        }
        CentralSeries {
            kind: SeriesKind::Upper,
            terms,
            stabilized: true,
        }
    }

    /// The class `c` with `γ_{c+1} = 0 ≠ γ_c`, or `None` when not nilpotent.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let series = self.lower_central_series();
        series.terms.iter().position(Subspace::is_zero)
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency_class().is_some()
    }

    /// `[L, S] ⊆ S` and `[S, L] ⊆ S`.
    pub fn is_ideal(&self, s: &Subspace) -> Result<bool> {
        let full = self.full_space();
        Ok(self.product(&full, s)?.is_subspace_of(s)?
            && self.product(s, &full)?.is_subspace_of(s)?)
    }

    pub fn is_subalgebra(&self, s: &Subspace) -> Result<bool> {
        self.product(s, s)?.is_subspace_of(s)
    }

    /// The same algebra in the basis whose vectors are the rows of `basis`.
    pub fn change_basis(&self, basis: &Matrix) -> Result<LeibnizAlgebra> {
        if basis.rows() != self.dim || basis.cols() != self.dim {
            return Err(Error::ShapeMismatch("change of basis must be dim x dim"));
        }
        // new coordinates y of an old vector x satisfy x = basis^T y
        let to_new = basis.transpose().inverse()?;
        let rows = basis.to_rows();
        let mut products = Vec::new();
        for (i, u) in rows.iter().enumerate() {
            for (j, v) in rows.iter().enumerate() {
                let w = self.bracket(u, v)?;
                products.push(((i, j), to_new.mul_vec(&w)?));
            }
        }
        LeibnizAlgebra::new_unchecked(self.field, self.dim, products)
    }

    /// The subalgebra spanned by the given independent vectors, written in
    /// that basis.
    pub fn restrict(&self, basis: &[Vec<Scalar>]) -> Result<LeibnizAlgebra> {
        let sub = Subspace::span(self.field, self.dim, basis)?;
        if sub.dim() != basis.len() {
            return Err(Error::BadSpec(
                "restriction basis is linearly dependent".into(),
            ));
        }
        let coords = Matrix::from_columns(self.field, self.dim, basis)?;
        let mut products = Vec::new();
        for (i, u) in basis.iter().enumerate() {
            for (j, v) in basis.iter().enumerate() {
                let w = self.bracket(u, v)?;
                let c = coords
                    .solve(&w)?
                    .ok_or_else(|| Error::BadSpec("span is not closed under the bracket".into()))?;
                products.push(((i, j), c));
            }
        }
        LeibnizAlgebra::new_unchecked(self.field, basis.len(), products)
    }

    /// `L / I` in the basis given by the images of `complement`, which
    /// together with a basis of the ideal must form a basis of `L`.
    pub fn quotient(&self, ideal: &Subspace, complement: &[Vec<Scalar>]) -> Result<LeibnizAlgebra> {
        if !self.is_ideal(ideal)? {
            return Err(Error::BadSpec(
                "quotient by a subspace that is not an ideal".into(),
            ));
        }
        let coords = self.quotient_coordinates(ideal, complement)?;
        let mut products = Vec::new();
        for (i, u) in complement.iter().enumerate() {
            for (j, v) in complement.iter().enumerate() {
                products.push(((i, j), coords(&self.bracket(u, v)?)?));
            }
        }
        LeibnizAlgebra::new_unchecked(self.field, complement.len(), products)
    }

    /// Map sending a vector of `L` to its coordinates in `L / I` with respect
    /// to the images of `complement`.
    pub fn quotient_coordinates(
        &self,
        ideal: &Subspace,
        complement: &[Vec<Scalar>],
    ) -> Result<impl Fn(&[Scalar]) -> Result<Vec<Scalar>>> {
        self.check_subspace(ideal)?;
        let k = complement.len();
        if k + ideal.dim() != self.dim {
            return Err(Error::BadSpec("complement has the wrong dimension".into()));
        }
        let mut columns: Vec<Vec<Scalar>> = complement.to_vec();
        columns.extend(ideal.basis_vectors().map(|v| v.to_vec()));
        let to_coords = Matrix::from_columns(self.field, self.dim, &columns)?
            .inverse()
            .map_err(|_| Error::BadSpec("complement and ideal do not span L".into()))?;
        Ok(move |v: &[Scalar]| -> Result<Vec<Scalar>> {
            let mut c = to_coords.mul_vec(v)?;
            c.truncate(k);
            Ok(c)
        })
    }
}
