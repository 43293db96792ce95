//! Size limits for exhaustive enumerations.

use crate::error::{Error, Result};

/// Default ceiling on the number of enumerated candidates, as a power of two.
pub const DEFAULT_GUARD_BITS: u32 = 24;
/// Ceiling used when the caller explicitly raises the guard.
pub const RAISED_GUARD_BITS: u32 = 28;

/// How large an exhaustive search may get.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Guard {
    #[default]
    Default,
    Raised,
    /// Arbitrary ceiling of `2^bits` candidates.
    Bits(u32),
}

impl Guard {
    pub fn limit_bits(self) -> u32 {
        match self {
            Guard::Default => DEFAULT_GUARD_BITS,
            Guard::Raised => RAISED_GUARD_BITS,
            Guard::Bits(b) => b,
        }
    }

    /// Returns `base^exponent` if it does not exceed the ceiling.
    pub fn check(self, base: u64, exponent: u32) -> Result<u64> {
        let bits = self.limit_bits();
        let limit = 1u128 << bits.min(127);
        let exceeded = || Error::GuardExceeded {
            base,
            exponent,
            limit_bits: bits,
        };
        let mut size: u128 = 1;
        for _ in 0..exponent {
            size = size.checked_mul(base as u128).ok_or_else(exceeded)?;
            if size > limit {
                return Err(exceeded());
            }
        }
        u64::try_from(size).map_err(|_| exceeded())
    }
}
