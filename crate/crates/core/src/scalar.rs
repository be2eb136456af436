//! Scalar abstraction shared by the polynomial, rational-function, matrix,
//! and integration kernels.

use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Field scalar. Implemented for exact rationals, `f64`, and univariate
/// rational functions over a scalar (so kernels can run with a symbolic
/// parameter in the coefficients).
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_i64(v: i64) -> Self;

    fn from_fraction(num: i64, den: i64) -> Self;

    /// Approximate float value, for diagnostics and numeric cross-checks.
    fn to_f64_approx(&self) -> f64;
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }

    fn from_fraction(num: i64, den: i64) -> Self {
        BigRational::new(num.into(), den.into())
    }

    fn to_f64_approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_fraction(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn to_f64_approx(&self) -> f64 {
        *self
    }
}
