use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::enumerate::{enumerate_endomorphisms, MapKind};
use super::{is_automorphism, require_automorphism};
use crate::cyclic::{CyclicAlgebra, QuotientBlock, RebaseResult};
use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar};
use crate::guard::Guard;

/// The action of an automorphism on `L/V` or `L/[U,U]`, in the projected
/// `d`-basis.
pub fn induced_quotient_map(
    l: &CyclicAlgebra,
    rebase: &RebaseResult,
    f: &Matrix,
    block: QuotientBlock,
) -> Result<Matrix> {
    let alg = l.algebra();
    require_automorphism(alg, f)?;
    let (ideal, complement) = rebase.quotient_data(block);
    if !f.image_of(ideal)?.is_subspace_of(ideal)? {
        return Err(Error::IdealNotPreserved);
    }
    let coords = alg.quotient_coordinates(ideal, &complement)?;
    let columns = complement
        .iter()
        .map(|w| coords(&f.mul_vec(w)?))
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_columns(l.field(), complement.len(), &columns)
}

/// Facts about `f -> (f mod V, f mod [U,U])` over the whole automorphism group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdirectReport {
    pub t: usize,
    pub aut_order: usize,
    /// Dimensions of `L/V` and `L/[U,U]`.
    pub quotient_dims: (usize, usize),
    /// Orders of the full automorphism groups of the two quotients.
    pub quotient_aut_orders: (usize, usize),
    /// Number of distinct images in each factor.
    pub image_orders: (usize, usize),
    /// Every induced map is an automorphism of its quotient.
    pub images_are_automorphisms: bool,
    pub injective: bool,
    /// Each projection respects composition.
    pub homomorphic: (bool, bool),
    /// Automorphisms acting trivially on both quotients; the identity alone
    /// is expected.
    pub kernel_order: usize,
    /// Size of the image of the pair map.
    pub pair_image_order: usize,
}

impl SubdirectReport {
    pub fn holds(&self) -> bool {
        self.images_are_automorphisms
            && self.injective
            && self.homomorphic == (true, true)
            && self.kernel_order == 1
    }
}

fn key(m: &Matrix) -> Vec<Scalar> {
    m.entries().to_vec()
}

pub fn subdirect_check(l: &CyclicAlgebra, guard: Guard) -> Result<SubdirectReport> {
    let rebase = l.rebase_type3()?;
    let alg = l.algebra();
    let auts = enumerate_endomorphisms(alg, MapKind::Automorphisms, guard)?.maps;
    let mod_v = l.type3_quotient(&rebase, QuotientBlock::ModV)?;
    let mod_uu = l.type3_quotient(&rebase, QuotientBlock::ModUU)?;

    let project = |f: &Matrix| -> Result<(Matrix, Matrix)> {
        Ok((
            induced_quotient_map(l, &rebase, f, QuotientBlock::ModV)?,
            induced_quotient_map(l, &rebase, f, QuotientBlock::ModUU)?,
        ))
    };
    let images = auts.iter().map(project).collect::<Result<Vec<_>>>()?;

    let images_are_automorphisms = images
        .iter()
        .all(|(g1, g2)| is_automorphism(&mod_v, g1) && is_automorphism(&mod_uu, g2));
    let firsts: BTreeSet<_> = images.iter().map(|(g1, _)| key(g1)).collect();
    let seconds: BTreeSet<_> = images.iter().map(|(_, g2)| key(g2)).collect();
    let pairs: BTreeSet<_> = images.iter().map(|(g1, g2)| (key(g1), key(g2))).collect();

    let mut homomorphic = (true, true);
    for (f, (f1, f2)) in auts.iter().zip(&images) {
        for (g, (g1, g2)) in auts.iter().zip(&images) {
            let (h1, h2) = project(&(f * g))?;
            homomorphic.0 &= h1 == f1 * g1;
            homomorphic.1 &= h2 == f2 * g2;
        }
    }
    let kernel_order = images
        .iter()
        .filter(|(g1, g2)| g1.is_identity() && g2.is_identity())
        .count();

    let quotient_aut_orders = (
        enumerate_endomorphisms(&mod_v, MapKind::Automorphisms, guard)?
            .maps
            .len(),
        enumerate_endomorphisms(&mod_uu, MapKind::Automorphisms, guard)?
            .maps
            .len(),
    );
    Ok(SubdirectReport {
        t: rebase.t,
        aut_order: auts.len(),
        quotient_dims: (mod_v.dim(), mod_uu.dim()),
        quotient_aut_orders,
        image_orders: (firsts.len(), seconds.len()),
        images_are_automorphisms,
        injective: pairs.len() == auts.len(),
        homomorphic,
        kernel_order,
        pair_image_order: pairs.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::{build_cyclic, CyclicSpec};
    use crate::exact::Field;

    fn build(field: Field, n: usize, alpha: &[i64]) -> CyclicAlgebra {
        build_cyclic(CyclicSpec::from_i64(field, n, alpha).unwrap()).unwrap()
    }

    #[test]
    fn identity_projects_to_identity() {
        let q = Field::Rationals;
        let l = build(q, 5, &[0, 0, 2, 1]);
        let r = l.rebase_type3().unwrap();
        let id = Matrix::identity(q, 5);
        for block in [QuotientBlock::ModV, QuotientBlock::ModUU] {
            assert!(induced_quotient_map(&l, &r, &id, block)
                .unwrap()
                .is_identity());
        }
    }

    #[test]
    fn small_subdirect() {
        let f = Field::prime(2).unwrap();
        let l = build(f, 3, &[0, 1]);
        let report = subdirect_check(&l, Guard::Default).unwrap();
        assert!(report.holds(), "{report:?}");
        assert_eq!(report.quotient_dims, (2, 2));
        let r = l.rebase_type3().unwrap();
        let auts =
            enumerate_endomorphisms(l.algebra(), MapKind::Automorphisms, Guard::Default).unwrap();
        for a in &auts.maps {
            let g = induced_quotient_map(&l, &r, a, QuotientBlock::ModV).unwrap();
            assert_eq!((g.rows(), g.cols()), (2, 2));
        }
    }

    #[test]
    fn rejects_non_automorphism() {
        let f = Field::prime(2).unwrap();
        let l = build(f, 3, &[0, 1]);
        let r = l.rebase_type3().unwrap();
        let zero = Matrix::zeros(f, 3, 3);
        assert_eq!(
            induced_quotient_map(&l, &r, &zero, QuotientBlock::ModV),
            Err(Error::NotAnAutomorphism)
        );
    }
}
