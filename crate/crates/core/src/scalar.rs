//! Scalar field abstraction.
//!
//! Everything in the series kernel is generic over the coefficient field.
//! The exact computations run over [`BigRational`]; `f64` and
//! [`Complex64`] instances exist so symbolic results can be evaluated
//! numerically with the same code paths.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};

pub trait Scalar:
    Clone + PartialEq + Debug + Display + Num + Neg<Output = Self> + Send + Sync + 'static
{
    /// The value `num / den`. `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Image of an exact rational in this field.
    fn from_rational(r: &BigRational) -> Self;

    fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }
}

impl Scalar for BigRational {
    fn from_ratio(num: i64, den: i64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
}

impl Scalar for f64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        num as f64 / den as f64
    }

    fn from_rational(r: &BigRational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for Complex64 {
    fn from_ratio(num: i64, den: i64) -> Self {
        Complex64::new(num as f64 / den as f64, 0.0)
    }

    fn from_rational(r: &BigRational) -> Self {
        Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }
}

/// Binomial coefficient as an exact integer-valued scalar.
pub fn binomial<S: Scalar>(n: i64, k: i64) -> S {
    if k < 0 || n < 0 || k > n {
        return S::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    S::from_rational(&BigRational::from_integer(acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_is_reduced() {
        let r = BigRational::from_ratio(6, -4);
        assert_eq!(r, BigRational::new(BigInt::from(-3), BigInt::from(2)));
        assert!(r.denom() > &BigInt::from(0));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial::<BigRational>(6, 2), BigRational::from_int(15));
        assert_eq!(binomial::<BigRational>(10, 0), BigRational::from_int(1));
        assert_eq!(binomial::<BigRational>(3, 5), BigRational::from_int(0));
        assert_eq!(binomial::<f64>(20, 10), 184756.0);
    }
}
