use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exact::{Matrix, Scalar};
use crate::guard::Guard;
use crate::leibniz::LeibnizAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MapKind {
    Endomorphisms,
    Automorphisms,
}

/// Result of an exhaustive search, in lexicographic order of the row-major
/// entry sequence (first entry most significant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutEnumeration {
    pub kind: MapKind,
    pub maps: Vec<Matrix>,
    /// Number of matrices examined.
    pub candidates: u64,
}

/// Structure constants as residues, for the inner loop of the search.
struct ResidueTable {
    p: u64,
    n: usize,
    /// Dense `(i, j) -> [b_i, b_j]`.
    dense: Vec<Option<Vec<u64>>>,
    nonzero: Vec<(usize, usize, Vec<u64>)>,
}

impl ResidueTable {
    fn new(alg: &LeibnizAlgebra, p: u64) -> ResidueTable {
        let n = alg.dim();
        let to_u64 = |v: &[Scalar]| -> Vec<u64> {
            v.iter()
                .map(|x| u64::from(x.residue().expect("finite field")))
                .collect()
        };
        let mut dense = alloc::vec![None; n * n];
        let mut nonzero = Vec::new();
        for ((i, j), v) in alg.products() {
            let r = to_u64(v);
            dense[i * n + j] = Some(r.clone());
            nonzero.push((i, j, r));
        }
        ResidueTable {
            p,
            n,
            dense,
            nonzero,
        }
    }

    /// `f` is row-major; column `j` is the image of `b_j`.
    fn is_endomorphism(&self, f: &[u64], lhs: &mut [u64], rhs: &mut [u64]) -> bool {
        let (n, p) = (self.n, self.p);
        for i in 0..n {
            for j in 0..n {
                lhs.iter_mut().for_each(|x| *x = 0);
                if let Some(w) = &self.dense[i * n + j] {
                    for r in 0..n {
                        let mut acc = 0;
                        for m in 0..n {
                            acc = (acc + f[r * n + m] * w[m]) % p;
                        }
                        lhs[r] = acc;
                    }
                }
                rhs.iter_mut().for_each(|x| *x = 0);
                for (a, b, w) in &self.nonzero {
                    let coeff = f[a * n + i] * f[b * n + j] % p;
                    if coeff == 0 {
                        continue;
                    }
                    for r in 0..n {
                        rhs[r] = (rhs[r] + coeff * w[r]) % p;
                    }
                }
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// Tests every `n x n` matrix over the (finite) base field.
pub fn enumerate_endomorphisms(
    alg: &LeibnizAlgebra,
    kind: MapKind,
    guard: Guard,
) -> Result<AutEnumeration> {
    let field = alg.field();
    let q = field.order().ok_or(Error::InfiniteField)?;
    let n = alg.dim();
    let candidates = guard.check(q, (n * n) as u32)?;
    let table = ResidueTable::new(alg, q);
    let elements: Vec<Scalar> = field.elements()?.collect();

    let mut maps = Vec::new();
    let mut f = alloc::vec![0u64; n * n];
    let mut lhs = alloc::vec![0u64; n];
    let mut rhs = alloc::vec![0u64; n];
    loop {
        if table.is_endomorphism(&f, &mut lhs, &mut rhs) {
            let m = Matrix::from_fn(field, n, n, |r, c| elements[f[r * n + c] as usize].clone());
            if kind == MapKind::Endomorphisms || m.is_invertible() {
                maps.push(m);
            }
        }
        let mut pos = n * n;
        loop {
            if pos == 0 {
                return Ok(AutEnumeration {
                    kind,
                    maps,
                    candidates,
                });
            }
            pos -= 1;
            f[pos] += 1;
            if f[pos] < q {
                break;
            }
            f[pos] = 0;
        }
    }
}
