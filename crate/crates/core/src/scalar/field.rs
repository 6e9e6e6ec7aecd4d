use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poly::Poly;

/// A commutative field with exact (or, for `f64`, IEEE) arithmetic.
///
/// Everything downstream of the scalar layer that only needs `+ - * /`
/// is written against this trait, so the same code evaluates R matrices,
/// L operators and Fock-space actions over `Rational`, over rational
/// functions in `t`, or over `f64` for quick numeric sanity checks.
pub trait Field:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_i64(v: i64) -> Self;

    /// Monic gcd of two polynomials, for types with a faster method
    /// than Euclid with monic remainders.
    fn poly_gcd(_a: &Poly<Self>, _b: &Poly<Self>) -> Option<Poly<Self>> {
        None
    }

    /// Integer power; negative exponents invert.
    fn powi(&self, e: i64) -> Self {
        let mut base = if e < 0 {
            Self::one() / self.clone()
        } else {
            self.clone()
        };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

impl Field for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Option<Poly<Self>> {
        Some(super::intpoly::rational_gcd(a, b))
    }
}

impl Field for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}
