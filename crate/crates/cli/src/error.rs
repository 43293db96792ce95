use std::fmt;

use leibniz_core::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_INVALID_INPUT: u8 = 2;
pub const EXIT_GUARD: u8 = 3;

/// A failure with its exit code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> CliError {
        CliError {
            code: EXIT_INVALID_INPUT,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

/// Library errors carry 0-based indices; messages here are 1-based.
impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let message = match &e {
            Error::NotLeibniz(i, j, k) => format!(
                "left Leibniz identity fails on basis triple ({}, {}, {})",
                i + 1,
                j + 1,
                k + 1
            ),
            Error::NotAnEndomorphism(i, j) => {
                format!(
                    "map is not an endomorphism (fails on basis pair ({}, {}))",
                    i + 1,
                    j + 1
                )
            }
            Error::NotClosedUnderCommutator(i, j) => format!(
                "operators {} and {} have a commutator outside their span",
                i + 1,
                j + 1
            ),
            other => other.to_string(),
        };
        let code = match e {
            Error::GuardExceeded { .. } => EXIT_GUARD,
            Error::Inconsistent(_) => EXIT_VERIFY_FAILED,
            _ => EXIT_INVALID_INPUT,
        };
        CliError { code, message }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_and_indices() {
        let guard = Error::GuardExceeded {
            base: 2,
            exponent: 36,
            limit_bits: 24,
        };
        assert_eq!(CliError::from(guard).code, EXIT_GUARD);
        assert_eq!(
            CliError::from(Error::Inconsistent("x")).code,
            EXIT_VERIFY_FAILED
        );
        let e = CliError::from(Error::NotAnEndomorphism(0, 2));
        assert_eq!(e.code, EXIT_INVALID_INPUT);
        assert!(e.message.contains("(1, 3)"), "{}", e.message);
    }
}
