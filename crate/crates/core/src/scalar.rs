//! Scalar abstraction over the two coefficient modes.
//!
//! Everything downstream (polynomials, profiles, certificates) is generic
//! over [`Scalar`], instantiated at [`Rational`] for exact mode and `f64`
//! for float mode.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

/// Arbitrary-precision exact rational. Kept in lowest terms with a positive
/// denominator by `num-rational`; zero is `0/1`.
pub type Rational = BigRational;

/// Coefficient and coordinate scalar.
///
/// `Signed` brings the full ring/field operations plus `abs` and sign tests
/// from `num-traits`.
pub trait Scalar: Clone + PartialOrd + fmt::Debug + fmt::Display + Signed {
    /// True when arithmetic is exact and zero tests need no tolerance.
    const EXACT: bool;

    fn from_rational(q: &Rational) -> Self;

    fn from_int(v: i64) -> Self;

    /// `|self|` as an `f64`, for float-mode thresholds, pivot selection and
    /// report rendering. May overflow to infinity for huge rationals.
    fn magnitude(&self) -> f64;

    /// Rank of a row-major matrix over this scalar: exact fraction-free
    /// elimination for rationals, thresholded pivoting for floats.
    fn matrix_rank(rows: &[Vec<Self>]) -> usize;
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn from_int(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn magnitude(&self) -> f64 {
        self.to_f64().map(f64::abs).unwrap_or(f64::INFINITY)
    }

    fn matrix_rank(rows: &[Vec<Self>]) -> usize {
        crate::rank::exact_rank(rows)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_rational(q: &Rational) -> Self {
        q.to_f64().unwrap_or(f64::NAN)
    }

    fn from_int(v: i64) -> Self {
        v as f64
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }

    fn matrix_rank(rows: &[Vec<Self>]) -> usize {
        crate::rank::float_rank(rows, crate::rank::FLOAT_PIVOT_REL_TOL)
    }
}

/// `base^exp` by repeated squaring; exponents here are small monomial degrees.
pub(crate) fn pow<S: Scalar>(base: &S, exp: u32) -> S {
    let mut result = S::one();
    let mut square = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            result = result * square.clone();
        }
        e >>= 1;
        if e > 0 {
            square = square.clone() * square;
        }
    }
    result
}

/// Convenience for exact rationals in tests and fixtures.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}
