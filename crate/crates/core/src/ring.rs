//! The commutative coefficient rings every algebraic structure is generic over.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A commutative ring with identity, used as the coefficient domain of Lie
/// algebras, enveloping algebras and tensors.
///
/// The by-reference methods exist because the hot loops of the rewriting
/// engine would otherwise clone every coefficient twice.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn mul_ref(&self, rhs: &Self) -> Self;

    fn add_ref(&self, rhs: &Self) -> Self;

    fn from_int(n: i64) -> Self;

    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&-rhs.clone())
    }
}

impl Ring for BigRational {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
}

impl Ring for f64 {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn from_int(n: i64) -> Self {
        n as f64
    }
}

impl Ring for num_complex::Complex64 {
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn from_int(n: i64) -> Self {
        num_complex::Complex64::new(n as f64, 0.0)
    }
}

/// Shorthand for a small rational `n/d`.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
