//! Exact stationary states of the multispecies asymmetric simple exclusion
//! process on a ring.
//!
//! Three independent constructions are provided and cross-checked:
//! the null vector of the Markov matrix ([`asep`]), multiline-queue sums
//! ([`mlq`]) and traces of products of t-oscillator layer operators
//! ([`ctm`]). The [`checks`] module verifies the algebraic identities that
//! tie them together.
//!
//! Arithmetic is generic over [`scalar::Field`]; the aliases below fix the
//! concrete exact types used throughout.

pub mod asep;
pub mod checks;
pub mod ctm;
pub mod error;
pub mod mlq;
pub mod oscillator;
pub mod scalar;

pub use error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;
/// Polynomial in `t` with rational coefficients.
pub type PolyT = scalar::Poly<Rational>;
/// Rational function in `t` with rational coefficients.
pub type RationalFunctionT = scalar::RatFunc<Rational>;
