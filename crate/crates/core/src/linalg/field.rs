use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

/// Exact field elements usable by the elimination kernel.
pub trait Field: Clone + Debug + Send + Sync {
    fn is_zero(&self) -> bool;
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Panics on a zero divisor; callers only divide by pivots.
    fn div(&self, other: &Self) -> Self;
    fn same(&self, other: &Self) -> bool;
    /// Smaller is a better pivot.
    fn complexity(&self) -> usize;
    fn is_one(&self) -> bool;
}

impl Field for Scalar {
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        Scalar::zero(self.params())
    }
    fn one_like(&self) -> Self {
        Scalar::one(self.params())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, other: &Self) -> Self {
        self / other
    }
    fn same(&self, other: &Self) -> bool {
        self == other
    }
    fn complexity(&self) -> usize {
        Scalar::complexity(self)
    }
    fn is_one(&self) -> bool {
        Scalar::is_one(self)
    }
}

impl Field for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, other: &Self) -> Self {
        assert!(!Zero::is_zero(other), "division by zero pivot");
        self / other
    }
    fn same(&self, other: &Self) -> bool {
        self == other
    }
    fn complexity(&self) -> usize {
        if Zero::is_zero(self) {
            return usize::MAX;
        }
        if self.denom().is_one() && self.numer().abs().is_one() {
            return 0;
        }
        1 + (self.numer().bits() + self.denom().bits()) as usize
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
}
