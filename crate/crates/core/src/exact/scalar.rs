use alloc::format;
use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest admissible prime modulus is strictly below this bound, so that a
/// product of two residues always fits in a `u64`.
pub const PRIME_BOUND: u64 = 1 << 31;

/// The base field: the rationals or a prime field GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u32),
}

impl Field {
    /// GF(p), after checking that `p` is a prime in `[2, 2^31)`.
    pub fn prime(p: u64) -> Result<Field> {
        if !(2..PRIME_BOUND).contains(&p) {
            return Err(Error::InvalidField(format!(
                "modulus {p} outside [2, 2^31)"
            )));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p as u32))
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(self) -> Option<u64> {
        match self {
            Field::Rationals => None,
            Field::Prime(p) => Some(p as u64),
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Residue {
                value: v.rem_euclid(p as i64) as u32,
                modulus: p,
            },
        }
    }

    /// The residue `r mod p`; for the rationals this is the integer `r`.
    pub fn from_u64(self, v: u64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::Residue {
                value: (v % p as u64) as u32,
                modulus: p,
            },
        }
    }

    /// `num / den` in this field.
    pub fn ratio(self, num: i64, den: i64) -> Result<Scalar> {
        self.from_i64(num).try_div(&self.from_i64(den))
    }

    /// All elements of a prime field in increasing residue order.
    pub fn elements(self) -> Result<impl Iterator<Item = Scalar>> {
        match self {
            Field::Rationals => Err(Error::InfiniteField),
            Field::Prime(p) => Ok((0..p).map(move |value| Scalar::Residue { value, modulus: p })),
        }
    }

    /// Parses the scalar text syntax: `a` or `a/b` (optional leading minus,
    /// `b > 0`) over the rationals, a decimal residue `0 <= r < p` over GF(p).
    pub fn parse_scalar(self, text: &str) -> Result<Scalar> {
        let err = |reason| Error::ParseScalar {
            text: text.to_string(),
            reason,
        };
        match self {
            Field::Rationals => {
                let (num, den) = match text.split_once('/') {
                    Some((n, d)) => (n, Some(d)),
                    None => (text, None),
                };
                let num = parse_signed(num).ok_or_else(|| err("malformed numerator"))?;
                let den = match den {
                    Some(d) => {
                        if !d.bytes().all(|b| b.is_ascii_digit()) || d.is_empty() {
                            return Err(err("denominator must be a positive decimal integer"));
                        }
                        let d: BigInt = d.parse().map_err(|_| err("malformed denominator"))?;
                        if d.is_zero() {
                            return Err(err("zero denominator"));
                        }
                        d
                    }
                    None => BigInt::one(),
                };
                Ok(Scalar::Rational(BigRational::new(num, den)))
            }
            Field::Prime(p) => {
                if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(err("residue must be a nonnegative decimal integer"));
                }
                let v: u64 = text.parse().map_err(|_| err("residue out of range"))?;
                if v >= p as u64 {
                    return Err(err("residue must be smaller than the modulus"));
                }
                Ok(Scalar::Residue {
                    value: v as u32,
                    modulus: p,
                })
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => f.write_str("Q"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

fn parse_signed(text: &str) -> Option<BigInt> {
    let digits = text.strip_prefix('-').unwrap_or(text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

fn is_prime(p: u64) -> bool {
    if p < 4 {
        return p >= 2;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field element in canonical form: a reduced fraction, or the
/// least nonnegative residue together with its modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u32, modulus: u32 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// The residue value, for prime-field scalars.
    pub fn residue(&self) -> Option<u32> {
        match self {
            Scalar::Residue { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    pub fn try_add(&self, rhs: &Scalar) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a + b)),
            (
                Scalar::Residue {
                    value: a,
                    modulus: p,
                },
                Scalar::Residue {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Ok(Scalar::Residue {
                value: ((*a as u64 + *b as u64) % *p as u64) as u32,
                modulus: *p,
            }),
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn try_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.try_add(&-rhs)
    }

    pub fn try_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a * b)),
            (
                Scalar::Residue {
                    value: a,
                    modulus: p,
                },
                Scalar::Residue {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Ok(Scalar::Residue {
                value: ((*a as u64 * *b as u64) % *p as u64) as u32,
                modulus: *p,
            }),
            _ => Err(Error::FieldMismatch),
        }
    }

    pub fn try_div(&self, rhs: &Scalar) -> Result<Scalar> {
        if self.field() != rhs.field() {
            return Err(Error::FieldMismatch);
        }
        self.try_mul(&rhs.inv()?)
    }

    /// Multiplicative inverse; `DivisionByZero` on zero.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: inverse_mod(*value, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, mut exp: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
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

fn inverse_mod(a: u32, p: u32) -> u32 {
    // extended Euclid on (a, p); a != 0 and p prime
    let (mut r0, mut r1) = (p as i64, a as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i64) as u32
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: if *value == 0 { 0 } else { modulus - value },
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

// Operator forms panic on mixed fields; every container in this crate keeps
// its entries over a single field, so a mismatch here is a bug.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs)
                    .expect("scalar operands over different fields")
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Rationals by value, residues by their least nonnegative representative.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (
                Scalar::Residue {
                    value: a,
                    modulus: p,
                },
                Scalar::Residue {
                    value: b,
                    modulus: q,
                },
            ) => p.cmp(q).then(a.cmp(b)),
            (Scalar::Rational(_), Scalar::Residue { .. }) => Ordering::Less,
            (Scalar::Residue { .. }, Scalar::Rational(_)) => Ordering::Greater,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Scalar {
    /// True for rationals with a negative value; residues are never negative.
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_negative())
    }

    /// Text form of the scalar, identical to `Display`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_addition() {
        let q = Field::Rationals;
        let a = q.parse_scalar("1/2").unwrap();
        let b = q.parse_scalar("1/3").unwrap();
        assert_eq!(a.try_add(&b).unwrap(), q.parse_scalar("5/6").unwrap());
    }

    #[test]
    fn small_prime_examples() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.from_i64(2).inv().unwrap(), f5.from_i64(3));
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.from_i64(2).try_mul(&f3.from_i64(2)).unwrap(), f3.one());
    }

    #[test]
    fn errors() {
        let f3 = Field::prime(3).unwrap();
        assert_eq!(f3.zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(Field::Rationals.zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(
            f3.one().try_add(&Field::Rationals.one()),
            Err(Error::FieldMismatch)
        );
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f3.one().try_mul(&f5.one()), Err(Error::FieldMismatch));
    }

    #[test]
    fn prime_validation() {
        assert!(Field::prime(2).is_ok());
        assert!(Field::prime(2_147_483_647).is_ok());
        assert!(Field::prime(1).is_err());
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(1 << 31).is_err());
    }

    #[test]
    fn text_syntax() {
        let q = Field::Rationals;
        assert_eq!(q.parse_scalar("-3/6").unwrap().to_string(), "-1/2");
        assert_eq!(q.parse_scalar("4/2").unwrap().to_string(), "2");
        assert_eq!(q.parse_scalar("-0").unwrap().to_string(), "0");
        for bad in ["", "1/", "/2", "1/-2", "1/0", "+1", "1.5", "a", "--1"] {
            assert!(q.parse_scalar(bad).is_err(), "{bad}");
        }
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.parse_scalar("6").unwrap(), f7.from_i64(-1));
        for bad in ["7", "-1", "", "1/2", "x"] {
            assert!(f7.parse_scalar(bad).is_err(), "{bad}");
        }
    }

    fn check_field_axioms(p: u64) {
        let f = Field::prime(p).unwrap();
        let els: alloc::vec::Vec<Scalar> = f.elements().unwrap().collect();
        for a in &els {
            assert_eq!(a + &f.zero(), a.clone());
            assert_eq!(a * &f.one(), a.clone());
            assert!((a + &-a).is_zero());
            if !a.is_zero() {
                assert!((a * &a.inv().unwrap()).is_one());
            }
            for b in &els {
                assert_eq!(a + b, b + a);
                assert_eq!(a * b, b * a);
                for c in &els {
                    assert_eq!(&(a + b) + c, a + &(b + c));
                    assert_eq!(&(a * b) * c, a * &(b * c));
                    assert_eq!(a * &(b + c), &(a * b) + &(a * c));
                }
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive() {
        for p in [2, 3, 5] {
            check_field_axioms(p);
        }
    }

    #[test]
    fn pow_matches_repeated_product() {
        let f7 = Field::prime(7).unwrap();
        let x = f7.from_i64(3);
        let mut acc = f7.one();
        for e in 0..10 {
            assert_eq!(x.pow(e), acc);
            acc = &acc * &x;
        }
    }
}
