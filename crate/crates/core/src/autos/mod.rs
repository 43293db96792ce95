//! Endomorphisms and automorphisms of Leibniz algebras.
//!
//! A linear map is a square matrix whose column `j` holds the image of the
//! basis vector `b_j`.

mod enumerate;
mod type1;
mod type2;
mod type3;

use crate::cyclic::CyclicAlgebra;
use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar};
use crate::leibniz::LeibnizAlgebra;

pub use enumerate::{enumerate_endomorphisms, AutEnumeration, MapKind};
pub use type1::{
    decompose_ud, diagonal_part, endo_type1_from_gammas, is_in_s, phi_to_unit, unitriangular_part,
    UDDecomposition,
};
pub use type2::{
    c_scalar, centralizer_d_membership, d_f_polynomial, endo_from_polynomial, type2_ring,
};
pub use type3::{induced_quotient_map, subdirect_check, SubdirectReport};

fn check_shape(alg: &LeibnizAlgebra, f: &Matrix) -> Result<()> {
    if f.rows() != alg.dim() || f.cols() != alg.dim() || f.field() != alg.field() {
        return Err(Error::AlgebraMismatch);
    }
    Ok(())
}

/// First basis pair `(i, j)` with `f([b_i, b_j]) != [f(b_i), f(b_j)]`.
pub fn endomorphism_violation(alg: &LeibnizAlgebra, f: &Matrix) -> Result<Option<(usize, usize)>> {
    check_shape(alg, f)?;
    let n = alg.dim();
    let images: alloc::vec::Vec<_> = (0..n).map(|j| f.column(j)).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = f.mul_vec(&alg.basis_bracket(i, j))?;
            let rhs = alg.bracket(&images[i], &images[j])?;
            if lhs != rhs {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

pub fn is_endomorphism(alg: &LeibnizAlgebra, f: &Matrix) -> bool {
    matches!(endomorphism_violation(alg, f), Ok(None))
}

pub fn is_automorphism(alg: &LeibnizAlgebra, f: &Matrix) -> bool {
    is_endomorphism(alg, f) && f.is_invertible()
}

pub(crate) fn require_endomorphism(alg: &LeibnizAlgebra, f: &Matrix) -> Result<()> {
    match endomorphism_violation(alg, f)? {
        None => Ok(()),
        Some((i, j)) => Err(Error::NotAnEndomorphism(i, j)),
    }
}

pub(crate) fn require_automorphism(alg: &LeibnizAlgebra, f: &Matrix) -> Result<()> {
    if is_automorphism(alg, f) {
        Ok(())
    } else {
        Err(Error::NotAnAutomorphism)
    }
}

/// The `λ` with `f(a_1) - λ a_1 ∈ [L,L]`, i.e. the `a_1`-coordinate of `f(a_1)`.
pub fn theta_scalar(l: &CyclicAlgebra, f: &Matrix) -> Result<Scalar> {
    require_automorphism(l.algebra(), f)?;
    let lambda = f.get(0, 0).clone();
    if lambda.is_zero() {
        return Err(Error::Inconsistent(
            "automorphism with zero leading coefficient",
        ));
    }
    Ok(lambda)
}

/// `ϑ(f) = 1`.
pub fn in_subgroup_u(l: &CyclicAlgebra, f: &Matrix) -> Result<bool> {
    Ok(theta_scalar(l, f)?.is_one())
}
