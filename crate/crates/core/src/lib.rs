//! Semistability, spectral divisors and splitting types of degree-zero
//! vector bundles on elliptic curves over finite fields.

pub mod bundles;
pub mod error;
pub mod elliptic;
pub mod funcspace;
pub mod galois;
pub mod stability;

pub use error::{Error, Result};
