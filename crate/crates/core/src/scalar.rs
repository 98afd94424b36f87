//! Scalar abstraction shared by every numeric routine.
//!
//! Exact types (`Ratio<i64>`, `Ratio<i128>`, `BigRational`) compare by
//! equality; floating-point types compare within a relative tolerance.

use std::fmt::Debug;
use std::ops::Neg;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::Ratio;
use num_traits::{Num, Zero};

pub trait Scalar: Num + Neg<Output = Self> + Clone + Debug + PartialEq + Send + Sync + 'static {
    /// Builds `num / den`. `den` must be nonzero.
    fn from_ratio(num: i64, den: i64) -> Self;

    fn from_int(v: i64) -> Self {
        Self::from_ratio(v, 1)
    }

    /// Exact equality for rationals, tolerance-based for floats.
    fn approx_eq(&self, other: &Self) -> bool;

    fn is_exact() -> bool;
}

macro_rules! impl_ratio_scalar {
    ($int:ty) => {
        impl Scalar for Ratio<$int> {
            fn from_ratio(num: i64, den: i64) -> Self {
                Ratio::new(num as $int, den as $int)
            }
            fn approx_eq(&self, other: &Self) -> bool {
                self == other
            }
            fn is_exact() -> bool {
                true
            }
        }
    };
}

impl_ratio_scalar!(i64);
impl_ratio_scalar!(i128);

impl Scalar for Ratio<BigInt> {
    fn from_ratio(num: i64, den: i64) -> Self {
        Ratio::new(BigInt::from(num), BigInt::from(den))
    }
    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }
    fn is_exact() -> bool {
        true
    }
}

macro_rules! impl_float_scalar {
    ($float:ty, $tol:expr) => {
        impl Scalar for $float {
            fn from_ratio(num: i64, den: i64) -> Self {
                num as $float / den as $float
            }
            fn approx_eq(&self, other: &Self) -> bool {
                let scale = self.abs().max(other.abs()).max(1.0);
                (self - other).abs() <= $tol * scale
            }
            fn is_exact() -> bool {
                false
            }
        }
    };
}

impl_float_scalar!(f32, 1e-5);
impl_float_scalar!(f64, 1e-10);

/// `i^e` as a complex scalar.
pub fn i_pow<S: Scalar>(e: u8) -> Complex<S> {
    match e % 4 {
        0 => Complex::new(S::one(), S::zero()),
        1 => Complex::new(S::zero(), S::one()),
        2 => Complex::new(-S::one(), S::zero()),
        _ => Complex::new(S::zero(), -S::one()),
    }
}

pub fn complex_approx_eq<S: Scalar>(a: &Complex<S>, b: &Complex<S>) -> bool {
    a.re.approx_eq(&b.re) && a.im.approx_eq(&b.im)
}

pub fn complex_is_zero<S: Scalar>(a: &Complex<S>) -> bool {
    complex_approx_eq(a, &Complex::zero())
}

/// Formats a rational as `num/den`, always with an explicit denominator.
pub fn fraction_string<T>(r: &Ratio<T>) -> String
where
    T: Clone + num_integer::Integer + std::fmt::Display,
{
    format!("{}/{}", r.numer(), r.denom())
}

/// Formats a rational the way reports print purities: `1`, `1/8`, `1/1024`.
pub fn purity_string<T>(r: &Ratio<T>) -> String
where
    T: Clone + num_integer::Integer + std::fmt::Display,
{
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        fraction_string(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    #[test]
    fn powers_of_i_cycle() {
        let i: Complex<Rational> = i_pow(1);
        assert_eq!(i * i, i_pow(2));
        assert_eq!(i_pow::<Rational>(4), i_pow(0));
        assert_eq!(i_pow::<Rational>(3) * i, i_pow(0));
    }

    #[test]
    fn float_tolerance() {
        assert!(0.1f64.approx_eq(&(0.3 - 0.2)));
        assert!(!0.1f64.approx_eq(&0.1001));
    }

    #[test]
    fn fraction_formatting() {
        assert_eq!(purity_string(&Rational::new(1, 1024)), "1/1024");
        assert_eq!(purity_string(&Rational::new(4, 4)), "1");
        assert_eq!(fraction_string(&Rational::new(-2, 4)), "-1/2");
        assert_eq!(fraction_string(&Rational::from_integer(0)), "0/1");
    }
}
