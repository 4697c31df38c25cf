//! The exact field every computation in this crate is generic over.

use std::fmt::{Debug, Display};

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

/// An exact field with decidable equality.
///
/// Elimination in [`crate::exactla`] relies on `x == 0` being a reliable test, so
/// only exact types implement this trait. Every `Ratio<T>` over a signed integer type
/// does; the crate-root alias [`crate::Rational`] (arbitrary precision) is the one the
/// parser and CLI use.
pub trait Field: Clone + PartialEq + Eq + Debug + Display + Zero + One + Send + Sync + 'static {
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    /// Panics when `rhs` is zero.
    fn div_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_i64(value: i64) -> Self;

    fn from_fraction(numer: i64, denom: i64) -> Self {
        Self::from_i64(numer).div_ref(&Self::from_i64(denom))
    }

    fn inv(&self) -> Self {
        Self::one().div_ref(self)
    }
}

impl<T> Field for Ratio<T>
where
    T: Clone + Integer + Signed + Debug + Display + Send + Sync + From<i64> + 'static,
{
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn div_ref(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero in exact field");
        self / rhs
    }

    fn neg_ref(&self) -> Self {
        -self
    }

    fn from_i64(value: i64) -> Self {
        Ratio::from_integer(T::from(value))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn fractions_reduce() {
        let half = Rational::from_fraction(2, 4);
        assert_eq!(half, Rational::from_fraction(1, 2));
        assert_eq!(half.inv(), Rational::from_i64(2));
    }

    #[test]
    fn small_ratio_is_a_field() {
        let a = Ratio::<i64>::from_fraction(3, 4);
        assert_eq!(a.mul_ref(&a.inv()), Ratio::one());
    }
}
