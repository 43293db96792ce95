use alloc::vec::Vec;

use super::{require_automorphism, require_endomorphism};
use crate::cyclic::{CyclicAlgebra, TypeTag};
use crate::error::{Error, Result};
use crate::exact::{Field, Matrix, Scalar};
use crate::polyring::{QuotElement, QuotientRing};

fn require_type1(l: &CyclicAlgebra) -> Result<()> {
    if l.tag() == TypeTag::I {
        Ok(())
    } else {
        Err(Error::WrongType { expected: "I" })
    }
}

/// The endomorphism with `f(a_1) = γ_1 a_1 + ... + γ_n a_n`: entry `(i, j)`
/// (1-based) is `γ_1^{j-1} γ_{i-j+1}` on and below the diagonal.
pub fn endo_type1_from_gammas(l: &CyclicAlgebra, gammas: &[Scalar]) -> Result<Matrix> {
    require_type1(l)?;
    let n = l.n();
    let field = l.field();
    if gammas.len() != n || gammas.iter().any(|g| g.field() != field) {
        return Err(Error::ShapeMismatch(
            "expected n parameters over the algebra's field",
        ));
    }
    let powers: Vec<Scalar> = (0..n).map(|j| gammas[0].pow(j as u32)).collect();
    Ok(Matrix::from_fn(field, n, n, |i, j| {
        if i >= j {
            &powers[j] * &gammas[i - j]
        } else {
            field.zero()
        }
    }))
}

/// Membership in the square-zero ideal: `f∘f = 0`, which for type I is the
/// same as `f(L) ⊆ [L,L]`. Both are evaluated and must agree.
pub fn is_in_s(l: &CyclicAlgebra, f: &Matrix) -> Result<bool> {
    require_type1(l)?;
    require_endomorphism(l.algebra(), f)?;
    let square_zero = (f * f).is_zero();
    let image = f.image_of(&l.algebra().full_space())?;
    let into_derived = image.is_subspace_of(&l.derived_span())?;
    if square_zero != into_derived {
        return Err(Error::Inconsistent(
            "square-zero test disagrees with the image test",
        ));
    }
    Ok(square_zero)
}

/// `f = M(u) D(d)` with `M(u)` unitriangular Toeplitz and
/// `D(d) = diag(d, d^2, ..., d^n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UDDecomposition {
    /// `γ_2/γ_1, ..., γ_n/γ_1`.
    pub u_params: Vec<Scalar>,
    pub d_scalar: Scalar,
}

impl UDDecomposition {
    pub fn reassemble(&self) -> Matrix {
        let n = self.u_params.len() + 1;
        let field = self.d_scalar.field();
        &unitriangular_part(field, &self.u_params) * &diagonal_part(&self.d_scalar, n)
    }
}

/// `M(u)`: lower triangular Toeplitz with first column `(1, u_2, ..., u_n)`.
pub fn unitriangular_part(field: Field, u_params: &[Scalar]) -> Matrix {
    let n = u_params.len() + 1;
    Matrix::from_fn(field, n, n, |i, j| match i.checked_sub(j) {
        Some(0) => field.one(),
        Some(k) => u_params[k - 1].clone(),
        None => field.zero(),
    })
}

/// `D(d) = diag(d, d^2, ..., d^n)`.
pub fn diagonal_part(d: &Scalar, n: usize) -> Matrix {
    let field = d.field();
    Matrix::from_fn(field, n, n, |i, j| {
        if i == j {
            d.pow(i as u32 + 1)
        } else {
            field.zero()
        }
    })
}

pub fn decompose_ud(l: &CyclicAlgebra, f: &Matrix) -> Result<UDDecomposition> {
    require_type1(l)?;
    require_automorphism(l.algebra(), f)?;
    let gamma = f.column(0);
    let g1 = gamma[0].clone();
    let inv = g1.inv()?;
    let decomposition = UDDecomposition {
        u_params: gamma[1..].iter().map(|g| g * &inv).collect(),
        d_scalar: g1,
    };
    if &decomposition.reassemble() != f {
        return Err(Error::Inconsistent(
            "automorphism is not of the closed form",
        ));
    }
    Ok(decomposition)
}

/// `1 + u_2 z + ... + u_n z^{n-1}` in `F[X]/(X^n)`.
pub fn phi_to_unit(field: Field, u_params: &[Scalar]) -> Result<QuotElement> {
    let ring = QuotientRing::truncated(field, u_params.len() + 1)?;
    let mut coeffs = alloc::vec![field.one()];
    coeffs.extend(u_params.iter().cloned());
    ring.from_coeffs(coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::{build_cyclic, CyclicSpec};
    use crate::exact::vector;
    use alloc::vec;

    fn type1(field: Field, n: usize) -> CyclicAlgebra {
        build_cyclic(CyclicSpec::new(field, n, vec![field.zero(); n - 1]).unwrap()).unwrap()
    }

    /// `f(a_1) = γ`, `f(a_{j+1}) = [f(a_1), f(a_j)]`.
    fn by_recurrence(l: &CyclicAlgebra, gammas: &[Scalar]) -> Matrix {
        let mut cols = vec![gammas.to_vec()];
        for j in 1..l.n() {
            let next = l.algebra().bracket(&cols[0], &cols[j - 1]).unwrap();
            cols.push(next);
        }
        Matrix::from_columns(l.field(), l.n(), &cols).unwrap()
    }

    #[test]
    fn closed_form_matches_recurrence() {
        let q = Field::Rationals;
        for n in 1..=6 {
            let l = type1(q, n);
            let gammas: Vec<Scalar> = (0..n)
                .map(|k| q.ratio(2 * k as i64 - 3, k as i64 + 2).unwrap())
                .collect();
            assert_eq!(
                endo_type1_from_gammas(&l, &gammas).unwrap(),
                by_recurrence(&l, &gammas)
            );
        }
    }

    #[test]
    fn closed_form_examples() {
        let f = Field::prime(3).unwrap();
        let l = type1(f, 3);
        let m = endo_type1_from_gammas(&l, &[f.from_i64(2), f.one(), f.zero()]).unwrap();
        let a2 = m.column(1);
        assert_eq!(a2, vec![f.zero(), f.one(), f.from_i64(2)]);
        let id = endo_type1_from_gammas(&l, &[f.one(), f.zero(), f.zero()]).unwrap();
        assert!(id.is_identity());
        let l2 = build_cyclic(CyclicSpec::from_i64(f, 2, &[1]).unwrap()).unwrap();
        assert_eq!(
            endo_type1_from_gammas(&l2, &[f.one(), f.zero()]),
            Err(Error::WrongType { expected: "I" })
        );
    }

    #[test]
    fn square_zero_membership() {
        let q = Field::Rationals;
        let l = type1(q, 2);
        assert!(is_in_s(&l, &Matrix::from_i64(q, &[&[0, 0], &[1, 0]])).unwrap());
        assert!(!is_in_s(&l, &Matrix::identity(q, 2)).unwrap());
        let g = endo_type1_from_gammas(&l, &[q.from_i64(3), q.from_i64(5)]).unwrap();
        assert!(!is_in_s(&l, &g).unwrap());
        assert_eq!(
            is_in_s(&l, &Matrix::from_i64(q, &[&[1, 0], &[0, 0]])),
            Err(Error::NotAnEndomorphism(0, 0))
        );
    }

    #[test]
    fn ud_examples() {
        let f = Field::prime(3).unwrap();
        let l = type1(f, 2);
        let m = endo_type1_from_gammas(&l, &[f.from_i64(2), f.one()]).unwrap();
        assert_eq!(m, Matrix::from_i64(f, &[&[2, 0], &[1, 1]]));
        let ud = decompose_ud(&l, &m).unwrap();
        assert_eq!(ud.d_scalar, f.from_i64(2));
        assert_eq!(ud.u_params, vec![f.from_i64(2)]);
        assert_eq!(ud.reassemble(), m);

        let id = decompose_ud(&l, &Matrix::identity(f, 2)).unwrap();
        assert!(id.d_scalar.is_one() && vector::is_zero(&id.u_params));

        let q = Field::Rationals;
        let l = type1(q, 3);
        let m = endo_type1_from_gammas(&l, &[q.one(), q.from_i64(4), q.from_i64(-1)]).unwrap();
        let ud = decompose_ud(&l, &m).unwrap();
        assert_eq!(ud.u_params, vec![q.from_i64(4), q.from_i64(-1)]);
    }

    #[test]
    fn phi_examples() {
        let f = Field::prime(2).unwrap();
        assert!(phi_to_unit(f, &[f.zero(), f.zero()]).unwrap().is_one());
        let u = vec![f.one(), f.zero()];
        let v = vec![f.one(), f.one()];
        let product = &unitriangular_part(f, &u) * &unitriangular_part(f, &v);
        // (1 + z)(1 + z + z^2) = 1 + z^3 = 1 mod X^3
        assert_eq!(product.column(0), vec![f.one(), f.zero(), f.zero()]);
        let lhs = phi_to_unit(f, &product.column(0)[1..]).unwrap();
        let rhs = &phi_to_unit(f, &u).unwrap() * &phi_to_unit(f, &v).unwrap();
        assert_eq!(lhs, rhs);
        assert!(lhs.is_one());

        let q = Field::Rationals;
        let u = vec![q.from_i64(3), q.ratio(-1, 2).unwrap()];
        let m = unitriangular_part(q, &u);
        let inv = m.inverse().unwrap();
        let prod = &phi_to_unit(q, &u).unwrap() * &phi_to_unit(q, &inv.column(0)[1..]).unwrap();
        assert!(prod.is_one());
    }
}
