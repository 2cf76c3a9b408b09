//! Evaluation of commutative non-associative multilinear polynomials on the
//! spin factors `J_n` and their Hermitian 2×2 models over ℝ, ℂ, ℍ and 𝕆,
//! with an exact classifier for the image of a polynomial.

pub mod classify;
pub mod cli;
pub mod composition;
pub mod error;
pub mod hermitian;
pub mod poly;
pub mod sampling;
pub mod scalar;
pub mod spin;

pub use error::{Error, Result};
