use alloc::string::String;

use crate::polyring::Poly;

/// Every failure the library can report.
///
/// Basis indices carried by variants are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("cannot parse scalar `{text}`: {reason}")]
    ParseScalar { text: String, reason: &'static str },
    #[error("matrix is singular")]
    Singular,
    #[error("shape mismatch: {0}")]
    ShapeMismatch(&'static str),
    #[error("subspaces live in different ambient spaces")]
    AmbientMismatch,

    #[error("polynomial division by zero")]
    DivisionByZeroPoly,
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("element is not a unit (gcd with the modulus is {gcd})")]
    NotAUnit { gcd: Poly },
    #[error("modulus must have positive degree")]
    ConstantModulus,
    #[error("ring modulus is not a power of X")]
    WrongModulus,
    #[error("enumeration requires a finite field")]
    InfiniteField,
    #[error("enumeration space {base}^{exponent} exceeds the guard of 2^{limit_bits} candidates")]
    GuardExceeded {
        base: u64,
        exponent: u32,
        limit_bits: u32,
    },

    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("left Leibniz identity fails on basis triple ({0}, {1}, {2})")]
    NotLeibniz(usize, usize, usize),
    #[error("bad structure: {0}")]
    BadSpec(String),
    #[error("operation requires a cyclic algebra of type {expected}")]
    WrongType { expected: &'static str },
    #[error("operator is singular; an automorphism of the module is required")]
    SingularOperator,
    #[error("operators {0} and {1} have a commutator outside their span")]
    NotClosedUnderCommutator(usize, usize),
    #[error("operator list is linearly dependent; structure constants would not be canonical")]
    DependentOperators,

    #[error("map is not an endomorphism (fails on basis pair ({0}, {1}))")]
    NotAnEndomorphism(usize, usize),
    #[error("map is not an automorphism")]
    NotAnAutomorphism,
    #[error("endomorphism does not fix the canonical element c")]
    NotInD,
    #[error("map does not preserve the ideal it should induce a quotient action on")]
    IdealNotPreserved,
    #[error("internal consistency check failed: {0}")]
    Inconsistent(&'static str),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
