//! Cyclic Leibniz algebras: basis `a_1, ..., a_n` with `[a_1, a_j] = a_{j+1}`
//! and `[a_1, a_n] = α_2 a_2 + ... + α_n a_n`.
//!
//! In code the basis vector `a_k` has index `k - 1`.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::exact::{vector, Field, Matrix, Scalar, Subspace};
use crate::leibniz::LeibnizAlgebra;
use crate::polyring::Poly;

/// Dimension and the coefficients `α_2, ..., α_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicSpec {
    field: Field,
    n: usize,
    alpha: Vec<Scalar>,
}

impl CyclicSpec {
    /// `alpha` lists `α_2, ..., α_n` and so has length `n - 1`.
    pub fn new(field: Field, n: usize, alpha: Vec<Scalar>) -> Result<CyclicSpec> {
        if n == 0 {
            return Err(Error::BadSpec("dimension must be positive".into()));
        }
        if alpha.len() != n - 1 {
            return Err(Error::BadSpec(alloc::format!(
                "expected {} coefficients for n = {n}, got {}",
                n - 1,
                alpha.len()
            )));
        }
        if alpha.iter().any(|a| a.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(CyclicSpec { field, n, alpha })
    }

    pub fn from_i64(field: Field, n: usize, alpha: &[i64]) -> Result<CyclicSpec> {
        CyclicSpec::new(field, n, alpha.iter().map(|&a| field.from_i64(a)).collect())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `α_2, ..., α_n`.
    pub fn alphas(&self) -> &[Scalar] {
        &self.alpha
    }

    /// `α_i` for `2 <= i <= n`.
    pub fn alpha(&self, i: usize) -> &Scalar {
        assert!(
            (2..=self.n).contains(&i),
            "alpha index {i} outside 2..={}",
            self.n
        );
        &self.alpha[i - 2]
    }

    pub fn classify(&self) -> TypeTag {
        match self.alpha.iter().position(|a| !a.is_zero()) {
            None => TypeTag::I,
            Some(0) => TypeTag::II,
            Some(k) => TypeTag::III { t: k + 2 },
        }
    }
}

/// The three cases. `t` is the 1-based index of the first nonzero `α`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TypeTag {
    I,
    II,
    III { t: usize },
}

impl fmt::Display for TypeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeTag::I => f.write_str("I"),
            TypeTag::II => f.write_str("II"),
            TypeTag::III { t } => write!(f, "III (t = {t})"),
        }
    }
}

pub fn classify(spec: &CyclicSpec) -> TypeTag {
    spec.classify()
}

/// A cyclic algebra in its `a`-basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicAlgebra {
    spec: CyclicSpec,
    algebra: LeibnizAlgebra,
    tag: TypeTag,
}

/// Type III data: the `d`-basis and the subspaces built from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RebaseResult {
    /// Row `j` holds the `a`-coordinates of `d_{j+1}`.
    pub transition: Matrix,
    /// `span{d_1, ..., d_{t-1}}`.
    pub u_sub: Subspace,
    /// `span{d_2, ..., d_{t-1}}`.
    pub uu_sub: Subspace,
    /// `span{d_t, ..., d_n}`.
    pub v_sub: Subspace,
    pub t: usize,
    /// `β_t, ..., β_n`.
    pub beta: Vec<Scalar>,
}

impl RebaseResult {
    /// `d_j` for `1 <= j <= n`.
    pub fn d(&self, j: usize) -> &[Scalar] {
        self.transition.row(j - 1)
    }

    pub fn n(&self) -> usize {
        self.transition.rows()
    }

    /// Ideal and complement (in the `d`-basis) for a type III quotient.
    pub fn quotient_data(&self, block: QuotientBlock) -> (&Subspace, Vec<Vec<Scalar>>) {
        let n = self.n();
        match block {
            QuotientBlock::ModV => (
                &self.v_sub,
                (1..self.t).map(|j| self.d(j).to_vec()).collect(),
            ),
            QuotientBlock::ModUU => {
                let mut complement = alloc::vec![self.d(1).to_vec()];
                complement.extend((self.t..=n).map(|j| self.d(j).to_vec()));
                (&self.uu_sub, complement)
            }
        }
    }
}

/// The two quotients of a type III algebra: `L/V` (type I, basis
/// `d_1..d_{t-1}`) and `L/[U,U]` (type II, basis `d_1, d_t..d_n`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QuotientBlock {
    ModV,
    ModUU,
}

impl fmt::Display for QuotientBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuotientBlock::ModV => "L/V",
            QuotientBlock::ModUU => "L/[U,U]",
        })
    }
}

/// A space of `m x m` operators closed under the commutator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorAction {
    pub field: Field,
    pub ambient_dim: usize,
    pub operators: Vec<Matrix>,
}

pub fn build_cyclic(spec: CyclicSpec) -> Result<CyclicAlgebra> {
    let field = spec.field;
    let n = spec.n;
    let mut products = Vec::new();
    if n >= 2 {
        for j in 0..n - 1 {
            products.push(((0, j), vector::unit(field, n, j + 1)));
        }
        let mut last = alloc::vec![field.zero()];
        last.extend(spec.alpha.iter().cloned());
        products.push(((0, n - 1), last));
    }
    let algebra = LeibnizAlgebra::new(field, n, products)?;
    let tag = spec.classify();
    Ok(CyclicAlgebra { spec, algebra, tag })
}

/// Matrix with ones below the diagonal and last column `coeffs`.
pub fn companion_matrix(field: Field, coeffs: &[Scalar]) -> Matrix {
    let m = coeffs.len();
    Matrix::from_fn(field, m, m, |r, c| {
        if c + 1 == m {
            coeffs[r].clone()
        } else if r == c + 1 {
            field.one()
        } else {
            field.zero()
        }
    })
}

impl CyclicAlgebra {
    pub fn spec(&self) -> &CyclicSpec {
        &self.spec
    }

    pub fn algebra(&self) -> &LeibnizAlgebra {
        &self.algebra
    }

    pub fn tag(&self) -> TypeTag {
        self.tag
    }

    pub fn field(&self) -> Field {
        self.spec.field
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    /// `a_k` for `1 <= k <= n`.
    pub fn a(&self, k: usize) -> Vec<Scalar> {
        vector::unit(self.field(), self.n(), k - 1)
    }

    /// `span{a_2, ..., a_n}`, which is `[L,L]`.
    pub fn derived_span(&self) -> Subspace {
        Subspace::coordinate(self.field(), self.n(), 1..self.n())
    }

    fn require(&self, expected: &'static str, ok: bool) -> Result<()> {
        if ok {
            Ok(())
        } else {
            Err(Error::WrongType { expected })
        }
    }

    /// `c = α_2^{-1}(α_2 a_1 + α_3 a_2 + ... + α_n a_{n-1} - a_n)` and the
    /// matrix of `l_c` on `[L,L]` in the basis `a_2, ..., a_n`.
    pub fn canonical_c(&self) -> Result<(Vec<Scalar>, Matrix)> {
        self.require("II", self.tag == TypeTag::II)?;
        let field = self.field();
        let n = self.n();
        let inv = self.spec.alpha(2).inv()?;
        let mut c = vector::zero(field, n);
        for k in 1..n {
            c[k - 1] = self.spec.alpha(k + 1) * &inv;
        }
        c[n - 1] = -&inv;
        Ok((c, companion_matrix(field, &self.spec.alpha)))
    }

    /// `a(X) = α_2 + α_3 X + ... + α_n X^{n-2} - X^{n-1}`.
    pub fn annihilator_poly(&self) -> Result<Poly> {
        self.require("II", self.tag == TypeTag::II)?;
        let field = self.field();
        let mut coeffs = self.spec.alpha.clone();
        coeffs.push(-field.one());
        Poly::from_coeffs(field, coeffs)
    }

    /// `a(X)` written term by term from the coefficients, with the leading
    /// term always shown as `− X^{n-1}`.
    pub fn annihilator_poly_text(&self) -> Result<String> {
        let a = self.annihilator_poly()?;
        let field = self.field();
        let lead = a.degree().unwrap_or(0);
        let body = Poly::from_coeffs(field, self.spec.alpha.clone())?;
        let tail = match lead {
            0 => String::from("1"),
            1 => String::from("X"),
            d => alloc::format!("X^{d}"),
        };
        Ok(if body.is_zero() {
            alloc::format!("−{tail}")
        } else {
            alloc::format!("{} − {tail}", body.display_in("X"))
        })
    }

    /// Rows `c, a_2, ..., a_n` in `a`-coordinates.
    pub fn type2_basis(&self) -> Result<Matrix> {
        let (c, _) = self.canonical_c()?;
        let mut rows = alloc::vec![c];
        rows.extend((2..=self.n()).map(|k| self.a(k)));
        Matrix::from_rows(self.field(), self.n(), rows)
    }

    /// The `d`-basis of a type III algebra.
    pub fn rebase_type3(&self) -> Result<RebaseResult> {
        let TypeTag::III { t } = self.tag else {
            return Err(Error::WrongType { expected: "III" });
        };
        let field = self.field();
        let n = self.n();
        let at_inv = self.spec.alpha(t).inv()?;
        // beta[k - t] = β_k
        let mut beta: Vec<Scalar> = (t..n).map(|k| self.spec.alpha(k + 1) * &at_inv).collect();
        beta.push(-&at_inv);

        let mut rows = Vec::with_capacity(n);
        for j in 1..t {
            // d_j = a_j + Σ_{k=t}^{n} β_k a_{k-t+1+j}
            let mut d = self.a(j);
            for k in t..=n {
                let idx = k - t + j;
                d[idx] = &d[idx] + &beta[k - t];
            }
            rows.push(d);
        }
        rows.extend((t..=n).map(|j| self.a(j)));
        let transition = Matrix::from_rows(field, n, rows)?;
        if !transition.is_invertible() {
            return Err(Error::Inconsistent("transition matrix is singular"));
        }
        let span = |range: core::ops::Range<usize>| {
            let vs: Vec<Vec<Scalar>> = range.map(|j| transition.row(j - 1).to_vec()).collect();
            Subspace::span(field, n, &vs)
        };
        Ok(RebaseResult {
            u_sub: span(1..t)?,
            uu_sub: span(2..t)?,
            v_sub: span(t..n + 1)?,
            transition,
            t,
            beta,
        })
    }

    /// `L/V` or `L/[U,U]` in the projected `d`-basis.
    pub fn type3_quotient(
        &self,
        rebase: &RebaseResult,
        block: QuotientBlock,
    ) -> Result<LeibnizAlgebra> {
        let (ideal, complement) = rebase.quotient_data(block);
        self.algebra.quotient(ideal, &complement)
    }
}

/// `A ⊕ Fc` with `[c, a] = c_matrix · a` and every other bracket zero.
/// The basis order is `c, a_1, ..., a_m`.
pub fn from_operator_action(field: Field, c_matrix: &Matrix) -> Result<LeibnizAlgebra> {
    if !c_matrix.is_square() || c_matrix.field() != field {
        return Err(Error::ShapeMismatch(
            "operator must be a square matrix over the field",
        ));
    }
    let m = c_matrix.rows();
    if !c_matrix.is_invertible() {
        return Err(Error::SingularOperator);
    }
    let products = (0..m).map(|j| {
        let mut v = alloc::vec![field.zero()];
        v.extend(c_matrix.column(j));
        ((0, j + 1), v)
    });
    LeibnizAlgebra::new(field, m + 1, products)
}

/// `A ⊕ S` with `[f, a] = f(a)` and `[f, g] = fg - gf` expanded in the
/// operator list. The basis order is `a_1, ..., a_m, f_1, ..., f_s`.
pub fn from_lie_action(action: &OperatorAction) -> Result<LeibnizAlgebra> {
    let field = action.field;
    let m = action.ambient_dim;
    let ops = &action.operators;
    if ops
        .iter()
        .any(|f| f.rows() != m || f.cols() != m || f.field() != field)
    {
        return Err(Error::ShapeMismatch(
            "operators must be m x m over the field",
        ));
    }
    let s = ops.len();
    let flat: Vec<Vec<Scalar>> = ops.iter().map(|f| f.entries().to_vec()).collect();
    let span = Matrix::from_columns(field, m * m, &flat)?;

    let mut expansions = Vec::new();
    let mut nonzero_commutator = false;
    for i in 0..s {
        for j in 0..s {
            let comm = &(&ops[i] * &ops[j]) - &(&ops[j] * &ops[i]);
            if comm.is_zero() {
                continue;
            }
            nonzero_commutator = true;
            let coeffs = span
                .solve(comm.entries())?
                .ok_or(Error::NotClosedUnderCommutator(i, j))?;
            expansions.push(((i, j), coeffs));
        }
    }
    if nonzero_commutator && span.rank() < s {
        return Err(Error::DependentOperators);
    }

    let dim = m + s;
    let mut products = Vec::new();
    for (i, f) in ops.iter().enumerate() {
        for b in 0..m {
            let mut v = vector::zero(field, dim);
            for (r, x) in f.column(b).into_iter().enumerate() {
                v[r] = x;
            }
            products.push(((m + i, b), v));
        }
    }
    for ((i, j), coeffs) in expansions {
        let mut v = vector::zero(field, dim);
        for (k, x) in coeffs.into_iter().enumerate() {
            v[m + k] = x;
        }
        products.push(((m + i, m + j), v));
    }
    LeibnizAlgebra::new(field, dim, products)
}
