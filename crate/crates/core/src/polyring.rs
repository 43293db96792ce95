//! Univariate polynomials over the base field and their quotient rings
//! `F[X]/(m)`, with unit inversion by the extended Euclidean algorithm.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exact::{Field, Matrix, Scalar};
use crate::guard::Guard;

/// A polynomial with coefficients in ascending degree and no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn zero(field: Field) -> Poly {
        Poly {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn one(field: Field) -> Poly {
        Poly::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Poly {
        Poly::from_coeffs_unchecked(c.field(), alloc::vec![c])
    }

    /// The indeterminate `X`.
    pub fn x(field: Field) -> Poly {
        Poly::monomial(field.one(), 1)
    }

    /// `c * X^degree`
    pub fn monomial(c: Scalar, degree: usize) -> Poly {
        let field = c.field();
        let mut coeffs = alloc::vec![field.zero(); degree];
        coeffs.push(c);
        Poly::from_coeffs_unchecked(field, coeffs)
    }

    pub fn from_coeffs(field: Field, coeffs: Vec<Scalar>) -> Result<Poly> {
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Poly::from_coeffs_unchecked(field, coeffs))
    }

    pub fn from_i64(field: Field, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs_unchecked(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    fn from_coeffs_unchecked(field: Field, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Coefficients in ascending degree; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `X^i`, zero beyond the degree.
    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn scale(&self, s: &Scalar) -> Poly {
        Poly::from_coeffs_unchecked(self.field, self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Monic associate; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            Some(lead) => self.scale(&lead.inv().expect("leading coefficient is nonzero")),
            None => self.clone(),
        }
    }

    pub fn try_add(&self, rhs: &Poly) -> Result<Poly> {
        self.check_field(rhs)?;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Ok(Poly::from_coeffs_unchecked(
            self.field,
            (0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect(),
        ))
    }

    pub fn try_sub(&self, rhs: &Poly) -> Result<Poly> {
        self.try_add(&-rhs)
    }

    pub fn try_mul(&self, rhs: &Poly) -> Result<Poly> {
        self.check_field(rhs)?;
        if self.is_zero() || rhs.is_zero() {
            return Ok(Poly::zero(self.field));
        }
        let mut out = alloc::vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Ok(Poly::from_coeffs_unchecked(self.field, out))
    }

    fn check_field(&self, rhs: &Poly) -> Result<()> {
        if self.field == rhs.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// Euclidean division: `self = q * den + r` with `deg r < deg den`.
    pub fn divmod(&self, den: &Poly) -> Result<(Poly, Poly)> {
        self.check_field(den)?;
        let Some(den_deg) = den.degree() else {
            return Err(Error::DivisionByZeroPoly);
        };
        let lead_inv = den.coeffs[den_deg].inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = alloc::vec![self.field.zero(); rem.len().saturating_sub(den_deg)];
        while rem.len() > den_deg {
            let top = rem.len() - 1;
            let factor = &rem[top] * &lead_inv;
            let shift = top - den_deg;
            if !factor.is_zero() {
                for (k, d) in den.coeffs.iter().enumerate() {
                    rem[shift + k] = &rem[shift + k] - &(&factor * d);
                }
            }
            quot[shift] = factor;
            rem.pop();
        }
        Ok((
            Poly::from_coeffs_unchecked(self.field, quot),
            Poly::from_coeffs_unchecked(self.field, rem),
        ))
    }

    pub fn rem(&self, den: &Poly) -> Result<Poly> {
        Ok(self.divmod(den)?.1)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// `g(M)` by Horner's rule.
    pub fn eval_matrix(&self, m: &Matrix) -> Result<Matrix> {
        if !m.is_square() {
            return Err(Error::ShapeMismatch("polynomial of a non-square matrix"));
        }
        if m.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        let n = m.rows();
        let mut acc = Matrix::zeros(self.field, n, n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &Matrix::identity(self.field, n).scale(c);
        }
        Ok(acc)
    }

    /// Human-readable form in the given variable, e.g. `1 + X − X^2`.
    pub fn display_in(&self, var: &str) -> String {
        let mut out = String::new();
        if self.is_zero() {
            out.push('0');
            return out;
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let magnitude = if negative { -c } else { c.clone() };
            if first {
                if negative {
                    out.push('−');
                }
            } else {
                out.push_str(if negative { " − " } else { " + " });
            }
            first = false;
            let term = match i {
                0 => None,
                1 => Some(String::from(var)),
                _ => Some(alloc::format!("{var}^{i}")),
            };
            match term {
                None => {
                    let _ = write!(out, "{magnitude}");
                }
                Some(t) if magnitude.is_one() => out.push_str(&t),
                Some(t) => {
                    let _ = write!(out, "{magnitude}{t}");
                }
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_in("X"))
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            field: self.field,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.try_add(rhs)
            .expect("polynomials over different fields")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.try_sub(rhs)
            .expect("polynomials over different fields")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.try_mul(rhs)
            .expect("polynomials over different fields")
    }
}

/// Bezout data for [`ext_gcd`]: `s*a + t*b = gcd` with `gcd` monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtGcd {
    pub gcd: Poly,
    pub s: Poly,
    pub t: Poly,
}

pub fn ext_gcd(a: &Poly, b: &Poly) -> Result<ExtGcd> {
    a.check_field(b)?;
    if a.is_zero() && b.is_zero() {
        return Err(Error::BothZero);
    }
    let field = a.field;
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Poly::one(field), Poly::zero(field));
    let (mut t0, mut t1) = (Poly::zero(field), Poly::one(field));
    while !r1.is_zero() {
        let (q, r) = r0.divmod(&r1)?;
        let s2 = &s0 - &(&q * &s1);
        let t2 = &t0 - &(&q * &t1);
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s2);
        (t0, t1) = (t1, t2);
    }
    let lead_inv = r0.leading().expect("gcd is nonzero").inv()?;
    Ok(ExtGcd {
        gcd: r0.scale(&lead_inv),
        s: s0.scale(&lead_inv),
        t: t0.scale(&lead_inv),
    })
}

#[derive(Debug)]
struct RingData {
    modulus: Poly,
    original: Poly,
}

/// `F[X]/(m)`. The modulus is kept monic; the polynomial originally supplied
/// is retained for display. Cloning is cheap.
#[derive(Clone, Debug)]
pub struct QuotientRing(Arc<RingData>);

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.modulus == other.0.modulus
    }
}

impl Eq for QuotientRing {}

impl QuotientRing {
    pub fn new(modulus: Poly) -> Result<QuotientRing> {
        match modulus.degree() {
            Some(d) if d >= 1 => Ok(QuotientRing(Arc::new(RingData {
                modulus: modulus.monic(),
                original: modulus,
            }))),
            _ => Err(Error::ConstantModulus),
        }
    }

    /// `F[X]/(X^n)`, the truncated polynomial ring.
    pub fn truncated(field: Field, n: usize) -> Result<QuotientRing> {
        QuotientRing::new(Poly::monomial(field.one(), n))
    }

    pub fn field(&self) -> Field {
        self.0.modulus.field
    }

    pub fn modulus(&self) -> &Poly {
        &self.0.modulus
    }

    pub fn original_modulus(&self) -> &Poly {
        &self.0.original
    }

    /// Degree of the modulus, i.e. the dimension of the ring over `F`.
    pub fn degree(&self) -> usize {
        self.0.modulus.degree().expect("modulus is nonzero")
    }

    /// `n` when the modulus is `X^n`.
    pub fn power_of_x(&self) -> Option<usize> {
        let m = &self.0.modulus;
        let d = self.degree();
        m.coeffs[..d].iter().all(Scalar::is_zero).then_some(d)
    }

    pub fn element(&self, p: &Poly) -> Result<QuotElement> {
        if p.field != self.field() {
            return Err(Error::FieldMismatch);
        }
        Ok(QuotElement {
            ring: self.clone(),
            residue: p.rem(self.modulus())?,
        })
    }

    pub fn from_coeffs(&self, coeffs: Vec<Scalar>) -> Result<QuotElement> {
        self.element(&Poly::from_coeffs(self.field(), coeffs)?)
    }

    pub fn one(&self) -> QuotElement {
        self.element(&Poly::one(self.field())).expect("same field")
    }

    pub fn zero(&self) -> QuotElement {
        self.element(&Poly::zero(self.field())).expect("same field")
    }

    /// The class `z = X + (m)`.
    pub fn z(&self) -> QuotElement {
        self.element(&Poly::x(self.field())).expect("same field")
    }

    /// Every residue, in lexicographic order of the ascending coefficient
    /// vector `(c_0, c_1, ..., c_{d-1})`.
    pub fn residues(&self, guard: Guard) -> Result<Vec<QuotElement>> {
        let field = self.field();
        let q = field.order().ok_or(Error::InfiniteField)?;
        let d = self.degree();
        let count = guard.check(q, d as u32)?;
        let mut out = Vec::with_capacity(count as usize);
        for_each_vector(field, d, |coeffs| {
            out.push(QuotElement {
                ring: self.clone(),
                residue: Poly::from_coeffs_unchecked(field, coeffs.to_vec()),
            })
        });
        Ok(out)
    }

    /// The unit group, by gcd filtering of every residue.
    pub fn units(&self, guard: Guard) -> Result<Vec<QuotElement>> {
        Ok(self
            .residues(guard)?
            .into_iter()
            .filter(QuotElement::is_unit)
            .collect())
    }

    /// Residues with constant term 1 in `F[X]/(X^n)`.
    pub fn one_units(&self, guard: Guard) -> Result<Vec<QuotElement>> {
        let n = self.power_of_x().ok_or(Error::WrongModulus)?;
        let field = self.field();
        let q = field.order().ok_or(Error::InfiniteField)?;
        let count = guard.check(q, n as u32 - 1)?;
        let mut out = Vec::with_capacity(count as usize);
        for_each_vector(field, n - 1, |tail| {
            let mut coeffs = Vec::with_capacity(n);
            coeffs.push(field.one());
            coeffs.extend_from_slice(tail);
            out.push(QuotElement {
                ring: self.clone(),
                residue: Poly::from_coeffs_unchecked(field, coeffs),
            })
        });
        Ok(out)
    }
}

/// Calls `f` on every vector of `GF(q)^len`, lexicographically with the
/// first coordinate most significant.
pub(crate) fn for_each_vector(field: Field, len: usize, mut f: impl FnMut(&[Scalar])) {
    let elements: Vec<Scalar> = field.elements().expect("finite field").collect();
    let q = elements.len();
    let mut digits = alloc::vec![0usize; len];
    let mut current: Vec<Scalar> = alloc::vec![elements[0].clone(); len];
    loop {
        f(&current);
        let mut pos = len;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < q {
                current[pos] = elements[digits[pos]].clone();
                break;
            }
            digits[pos] = 0;
            current[pos] = elements[0].clone();
        }
    }
}

/// A residue class in a [`QuotientRing`], represented by its remainder.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotElement {
    ring: QuotientRing,
    residue: Poly,
}

impl QuotElement {
    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn residue(&self) -> &Poly {
        &self.residue
    }

    /// Coefficients `c_0..c_{d-1}`, zero padded to the ring degree.
    pub fn coefficient_vector(&self) -> Vec<Scalar> {
        (0..self.ring.degree())
            .map(|i| self.residue.coeff(i))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.residue.is_one()
    }

    fn check_ring(&self, rhs: &QuotElement) -> Result<()> {
        if self.ring == rhs.ring {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(&self, rhs: &QuotElement) -> Result<QuotElement> {
        self.check_ring(rhs)?;
        self.ring.element(&(&self.residue + &rhs.residue))
    }

    pub fn try_mul(&self, rhs: &QuotElement) -> Result<QuotElement> {
        self.check_ring(rhs)?;
        self.ring.element(&(&self.residue * &rhs.residue))
    }

    /// Unit test by gcd with the modulus.
    pub fn is_unit(&self) -> bool {
        self.inv().is_ok()
    }

    /// Inverse via the Bezout identity `s * x + t * m = 1`; when the gcd has
    /// positive degree it is returned as the witness in `NotAUnit`.
    pub fn inv(&self) -> Result<QuotElement> {
        if self.residue.is_zero() {
            return Err(Error::NotAUnit {
                gcd: self.ring.modulus().clone(),
            });
        }
        let g = ext_gcd(&self.residue, self.ring.modulus())?;
        if !g.gcd.is_one() {
            return Err(Error::NotAUnit { gcd: g.gcd });
        }
        self.ring.element(&g.s)
    }

    pub fn pow(&self, mut exp: u32) -> QuotElement {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }
}

impl Mul for &QuotElement {
    type Output = QuotElement;
    fn mul(self, rhs: &QuotElement) -> QuotElement {
        self.try_mul(rhs).expect("elements of different rings")
    }
}

impl Add for &QuotElement {
    type Output = QuotElement;
    fn add(self, rhs: &QuotElement) -> QuotElement {
        self.try_add(rhs).expect("elements of different rings")
    }
}

impl fmt::Display for QuotElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.residue.display_in("z"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn gf(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    #[test]
    fn divmod_examples() {
        let q = Field::Rationals;
        let (quot, rem) = Poly::from_i64(q, &[0, 0, 1]).divmod(&Poly::x(q)).unwrap();
        assert_eq!(quot, Poly::x(q));
        assert!(rem.is_zero());

        let f2 = gf(2);
        let (quot, rem) = Poly::from_i64(f2, &[1, 0, 1])
            .divmod(&Poly::from_i64(f2, &[1, 1]))
            .unwrap();
        assert_eq!(quot, Poly::from_i64(f2, &[1, 1]));
        assert!(rem.is_zero());

        let c = Poly::from_i64(q, &[3, 1]);
        let d = Poly::from_i64(q, &[1, 0, 2]);
        let (quot, rem) = c.divmod(&d).unwrap();
        assert!(quot.is_zero());
        assert_eq!(rem, c);

        assert_eq!(c.divmod(&Poly::zero(q)), Err(Error::DivisionByZeroPoly));
    }

    #[test]
    fn ext_gcd_examples() {
        let q = Field::Rationals;
        let x = Poly::x(q);
        let x2 = Poly::from_i64(q, &[0, 0, 1]);
        assert_eq!(ext_gcd(&x, &x2).unwrap().gcd, x);

        let a = Poly::from_i64(q, &[-1, 1]);
        let b = Poly::from_i64(q, &[1, 1]);
        let g = ext_gcd(&a, &b).unwrap();
        assert!(g.gcd.is_one());
        assert_eq!(g.s, Poly::constant(q.ratio(-1, 2).unwrap()));
        assert_eq!(g.t, Poly::constant(q.ratio(1, 2).unwrap()));
        assert_eq!(&(&g.s * &a) + &(&g.t * &b), Poly::one(q));

        let a = Poly::from_i64(q, &[2, 4]);
        let g = ext_gcd(&a, &Poly::zero(q)).unwrap();
        assert_eq!(g.gcd, a.monic());
        assert_eq!(g.s, Poly::constant(q.ratio(1, 4).unwrap()));
        assert!(g.t.is_zero());

        assert_eq!(
            ext_gcd(&Poly::zero(q), &Poly::zero(q)),
            Err(Error::BothZero)
        );
    }

    #[test]
    fn inverse_examples() {
        // (1 - z)^{-1} = 1 + z + ... + z^{n-1} in F[X]/(X^n)
        let q = Field::Rationals;
        let ring = QuotientRing::truncated(q, 5).unwrap();
        let x = ring.element(&Poly::from_i64(q, &[1, -1])).unwrap();
        assert_eq!(
            x.inv().unwrap().residue(),
            &Poly::from_i64(q, &[1, 1, 1, 1, 1])
        );

        let f3 = gf(3);
        let ring = QuotientRing::new(Poly::from_i64(f3, &[-1, 0, 1])).unwrap();
        assert_eq!(ring.z().inv().unwrap(), ring.z());

        let f2 = gf(2);
        let ring = QuotientRing::truncated(f2, 3).unwrap();
        assert_eq!(ring.z().inv(), Err(Error::NotAUnit { gcd: Poly::x(f2) }));
    }

    #[test]
    fn unit_counts() {
        let f2 = gf(2);
        let ring = QuotientRing::truncated(f2, 3).unwrap();
        assert_eq!(ring.units(Guard::Default).unwrap().len(), 4);
        let f3 = gf(3);
        let ring = QuotientRing::truncated(f3, 2).unwrap();
        assert_eq!(ring.units(Guard::Default).unwrap().len(), 6);
        let ring = QuotientRing::new(Poly::from_i64(f2, &[1, 1, 1])).unwrap();
        assert_eq!(ring.units(Guard::Default).unwrap().len(), 3);
    }

    #[test]
    fn one_units_examples() {
        let f2 = gf(2);
        let ring = QuotientRing::truncated(f2, 3).unwrap();
        let got: Vec<Poly> = ring
            .one_units(Guard::Default)
            .unwrap()
            .into_iter()
            .map(|e| e.residue().clone())
            .collect();
        assert_eq!(
            got,
            vec![
                Poly::from_i64(f2, &[1]),
                Poly::from_i64(f2, &[1, 0, 1]),
                Poly::from_i64(f2, &[1, 1]),
                Poly::from_i64(f2, &[1, 1, 1]),
            ]
        );
        let f3 = gf(3);
        let ring = QuotientRing::truncated(f3, 2).unwrap();
        assert_eq!(ring.one_units(Guard::Default).unwrap().len(), 3);
        let ring = QuotientRing::truncated(f3, 1).unwrap();
        let only = ring.one_units(Guard::Default).unwrap();
        assert_eq!(only.len(), 1);
        assert!(only[0].is_one());

        let not_power = QuotientRing::new(Poly::from_i64(f2, &[1, 1])).unwrap();
        assert_eq!(
            not_power.one_units(Guard::Default).map(|v| v.len()),
            Err(Error::WrongModulus)
        );
        let rational = QuotientRing::truncated(Field::Rationals, 2).unwrap();
        assert_eq!(
            rational.units(Guard::Default).map(|v| v.len()),
            Err(Error::InfiniteField)
        );
    }

    #[test]
    fn enumeration_respects_guard() {
        let f2 = gf(2);
        let ring = QuotientRing::truncated(f2, 30).unwrap();
        assert!(matches!(
            ring.units(Guard::Default),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn constant_modulus_rejected() {
        let q = Field::Rationals;
        assert_eq!(
            QuotientRing::new(Poly::one(q)).map(|_| ()),
            Err(Error::ConstantModulus)
        );
        assert_eq!(
            QuotientRing::new(Poly::zero(q)).map(|_| ()),
            Err(Error::ConstantModulus)
        );
    }

    #[test]
    fn display() {
        let q = Field::Rationals;
        assert_eq!(Poly::from_i64(q, &[1, 1, -1]).to_string(), "1 + X − X^2");
        assert_eq!(Poly::from_i64(q, &[0, -2, 0, 3]).to_string(), "−2X + 3X^3");
        assert_eq!(Poly::zero(q).to_string(), "0");
        let ring = QuotientRing::truncated(q, 3).unwrap();
        assert_eq!(
            ring.element(&Poly::from_i64(q, &[1, 0, 1]))
                .unwrap()
                .to_string(),
            "1 + z^2"
        );
    }

    #[test]
    fn matrix_evaluation() {
        let q = Field::Rationals;
        let m = Matrix::from_i64(q, &[&[0, 1], &[1, 0]]);
        // X^2 - 1 annihilates a swap
        let g = Poly::from_i64(q, &[-1, 0, 1]);
        assert!(g.eval_matrix(&m).unwrap().is_zero());
    }
}
