//! Coefficient rings for q-series.
//!
//! Every coefficient type must be an exact field: identities are decided by
//! testing coefficients for equality with zero, so inexact types would turn
//! proofs into numerical evidence.

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, ToPrimitive};

/// An exact field usable as the coefficient ring of a [`Series`](crate::Series).
pub trait Scalar:
    Clone + PartialEq + fmt::Debug + fmt::Display + Num + Neg<Output = Self> + Send + Sync + 'static
{
    /// Embeds an integer. Fixed-width implementations panic on overflow, like
    /// their arithmetic does.
    fn from_bigint(n: BigInt) -> Self;

    /// Embeds an arbitrary-precision rational.
    fn from_rational(r: &BigRational) -> Self;

    /// The value as an arbitrary-precision rational.
    fn to_rational(&self) -> BigRational;

    fn from_int(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    /// `Some(n)` when the value is an integer that fits in `i64`.
    fn to_int(&self) -> Option<i64> {
        let r = self.to_rational();
        if r.is_integer() {
            r.to_integer().to_i64()
        } else {
            None
        }
    }
}

impl Scalar for BigRational {
    fn from_bigint(n: BigInt) -> Self {
        BigRational::from_integer(n)
    }

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }
}

macro_rules! impl_fixed_ratio {
    ($($t:ty),*) => {$(
        impl Scalar for Ratio<$t> {
            fn from_bigint(n: BigInt) -> Self {
                let v: $t = n.try_into().expect("integer does not fit the coefficient type");
                Ratio::from_integer(v)
            }

            fn from_rational(r: &BigRational) -> Self {
                let num: $t = r.numer().try_into().expect("numerator does not fit the coefficient type");
                let den: $t = r.denom().try_into().expect("denominator does not fit the coefficient type");
                Ratio::new(num, den)
            }

            fn to_rational(&self) -> BigRational {
                BigRational::new(BigInt::from(*self.numer()), BigInt::from(*self.denom()))
            }
        }
    )*};
}

impl_fixed_ratio!(i64, i128);
