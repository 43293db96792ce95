use super::{require_automorphism, require_endomorphism};
use crate::cyclic::CyclicAlgebra;
use crate::error::{Error, Result};
use crate::exact::{vector, Matrix, Scalar};
use crate::polyring::{Poly, QuotElement, QuotientRing};

/// `F[X]/(a(X))`.
pub fn type2_ring(l: &CyclicAlgebra) -> Result<QuotientRing> {
    QuotientRing::new(l.annihilator_poly()?)
}

/// Whether `f` is an endomorphism fixing the canonical `c`. A map moving `c`
/// is reported as outside `D` without testing the bracket.
pub fn centralizer_d_membership(l: &CyclicAlgebra, f: &Matrix) -> Result<bool> {
    let (c, _) = l.canonical_c()?;
    if f.rows() != l.n() || f.cols() != l.n() || f.field() != l.field() {
        return Err(Error::AlgebraMismatch);
    }
    if f.mul_vec(&c)? != c {
        return Ok(false);
    }
    require_endomorphism(l.algebra(), f)?;
    Ok(true)
}

/// The class of `β_0 + β_1 X + ... + β_{n-2} X^{n-2}` where
/// `f(a_2) = β_0 a_2 + ... + β_{n-2} a_n`.
pub fn d_f_polynomial(l: &CyclicAlgebra, f: &Matrix) -> Result<QuotElement> {
    let in_d = match centralizer_d_membership(l, f) {
        Ok(b) => b,
        Err(Error::NotAnEndomorphism(..)) => false,
        Err(e) => return Err(e),
    };
    if !in_d {
        return Err(Error::NotInD);
    }
    let (_, companion) = l.canonical_c()?;
    let n = l.n();
    let image = f.column(1);
    if !image[0].is_zero() {
        return Err(Error::Inconsistent("endomorphism moves a_2 out of [L,L]"));
    }
    let g = Poly::from_coeffs(l.field(), image[1..].to_vec())?;
    let action = g.eval_matrix(&companion)?;
    for j in 1..n {
        let col = f.column(j);
        if !col[0].is_zero() || col[1..] != action.column(j - 1)[..] {
            return Err(Error::Inconsistent(
                "endomorphism is not a polynomial in l_c on [L,L]",
            ));
        }
    }
    type2_ring(l)?.element(&g)
}

/// The map acting as `g(l_c)` on `[L,L]` and fixing `c`.
pub fn endo_from_polynomial(l: &CyclicAlgebra, g: &Poly) -> Result<Matrix> {
    let (_, companion) = l.canonical_c()?;
    let field = l.field();
    let n = l.n();
    if g.field() != field {
        return Err(Error::FieldMismatch);
    }
    let action = g.eval_matrix(&companion)?;
    let block = Matrix::from_fn(field, n, n, |i, j| match (i, j) {
        (0, 0) => field.one(),
        (0, _) | (_, 0) => field.zero(),
        _ => action.get(i - 1, j - 1).clone(),
    });
    let p = l.type2_basis()?.transpose();
    let p_inv = p.inverse()?;
    Ok(&(&p * &block) * &p_inv)
}

/// The scalar `s` with `f(c) = s c` for an automorphism `f`.
pub fn c_scalar(l: &CyclicAlgebra, f: &Matrix) -> Result<Scalar> {
    let (c, _) = l.canonical_c()?;
    require_automorphism(l.algebra(), f)?;
    let image = f.mul_vec(&c)?;
    // c has a_1-coordinate 1
    let s = image[0].clone();
    if image != vector::scale(&c, &s) {
        return Err(Error::Inconsistent("automorphism does not preserve Fc"));
    }
    Ok(s)
}
