//! Scalar abstraction shared by the linear algebra and closed-form code.
//!
//! Everything that produces a hitting time is generic over [`Scalar`], so
//! the same code runs over arbitrary-precision rationals (the default and the
//! only type used for verification) and over machine floats for quick
//! approximate evaluation.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// A field element usable as a matrix entry or hitting-time value.
pub trait Scalar: Num + Signed + Clone + Debug + PartialEq {
    /// `true` when arithmetic is exact, so equality checks are meaningful.
    const EXACT: bool;

    fn from_bigint(value: &BigInt) -> Self;

    fn from_i64(value: i64) -> Self {
        Self::from_bigint(&BigInt::from(value))
    }

    /// Ratio of two integers.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        Self::from_bigint(num) / Self::from_bigint(den)
    }

    fn approx_f64(&self) -> f64;

    /// `sum_k a_k * b_k`.
    fn sum_of_products<'a>(terms: impl IntoIterator<Item = (&'a Self, &'a Self)>) -> Self
    where
        Self: 'a,
    {
        terms
            .into_iter()
            .fold(Self::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_bigint(value: &BigInt) -> Self {
        BigRational::from_integer(value.clone())
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        BigRational::new(num.clone(), den.clone())
    }

    fn approx_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    // Accumulates an unreduced fraction and reduces once at the end; each
    // intermediate reduction would cost a big-integer gcd.
    fn sum_of_products<'a>(terms: impl IntoIterator<Item = (&'a Self, &'a Self)>) -> Self {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (a, b) in terms {
            let tn = a.numer() * b.numer();
            if tn.is_zero() {
                continue;
            }
            let td = a.denom() * b.denom();
            if td == den {
                num += tn;
            } else if td.is_one() {
                num += tn * &den;
            } else {
                num = num * &td + tn * &den;
                den *= td;
            }
        }
        BigRational::new(num, den)
    }
}

/// Small exact rationals. Panics if a value does not fit in `i64`.
impl Scalar for Ratio<i64> {
    const EXACT: bool = true;

    fn from_bigint(value: &BigInt) -> Self {
        let v = value.to_i64().expect("integer does not fit in i64");
        Ratio::from_integer(v)
    }

    fn approx_f64(&self) -> f64 {
        *self.numer() as f64 / *self.denom() as f64
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_bigint(value: &BigInt) -> Self {
        value.to_f64().unwrap_or(f64::NAN)
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        // Both sides can exceed f64 range long before the quotient does.
        ToPrimitive::to_f64(&BigRational::new(num.clone(), den.clone())).unwrap_or(f64::NAN)
    }

    fn approx_f64(&self) -> f64 {
        *self
    }
}

impl Scalar for f32 {
    const EXACT: bool = false;

    fn from_bigint(value: &BigInt) -> Self {
        value.to_f32().unwrap_or(f32::NAN)
    }

    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        <f64 as Scalar>::from_ratio(num, den) as f32
    }

    fn approx_f64(&self) -> f64 {
        f64::from(*self)
    }
}
