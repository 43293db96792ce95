//! Exact scalars over Q and GF(p), dense matrices and canonical subspaces.

mod matrix;
mod scalar;
mod subspace;
pub mod vector;

pub use matrix::{Matrix, Rref};
pub use scalar::{Field, Scalar, PRIME_BOUND};
pub use subspace::Subspace;
