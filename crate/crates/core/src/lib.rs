//! Exact computation with finite-dimensional cyclic Leibniz algebras over the
//! rationals and prime fields: construction and classification, centers and
//! central series, endomorphism monoids and automorphism groups in closed
//! form, and brute-force enumeration oracles that check them.
//!
//! The crate is `no_std` and needs only `alloc`.

#![no_std]

extern crate alloc;

pub mod autos;
pub mod cyclic;
mod error;
pub mod exact;
pub mod guard;
pub mod leibniz;
pub mod polyring;

pub use error::{Error, Result};
pub use exact::{Field, Matrix, Scalar, Subspace};
pub use guard::Guard;
