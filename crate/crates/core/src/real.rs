//! Scalar abstraction shared by the double-precision and extended-precision
//! evaluation paths.

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{Num, ToPrimitive};

/// Real scalar with the elementary functions the evaluators need.
///
/// Implemented for `f64` and for [`crate::Mp`]; every evaluator is generic
/// over this trait so the same code path runs at either precision.
pub trait Real:
    Num + Neg<Output = Self> + Clone + Debug + Display + PartialOrd + Send + Sync + 'static
{
    /// Short name used in reports.
    const NAME: &'static str;

    /// Working precision in bits of mantissa.
    fn precision_bits() -> u32;

    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;

    fn from_i64(x: i64) -> Self {
        if x.unsigned_abs() < (1u64 << 53) {
            Self::from_f64(x as f64)
        } else {
            Self::from_bigint(&BigInt::from(x))
        }
    }

    fn from_bigint(x: &BigInt) -> Self {
        let (sign, digits) = x.to_u32_digits();
        let base = Self::from_f64(4294967296.0);
        let mut acc = Self::zero();
        for d in digits.iter().rev() {
            acc = acc * base.clone() + Self::from_f64(*d as f64);
        }
        if sign == Sign::Minus {
            -acc
        } else {
            acc
        }
    }

    fn from_ratio(x: &BigRational) -> Self {
        Self::from_bigint(x.numer()) / Self::from_bigint(x.denom())
    }

    fn pi() -> Self;
    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn atan(&self) -> Self;
    fn floor(&self) -> Self;
    fn is_finite(&self) -> bool;

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Unit roundoff `2^{1-bits}`.
    fn epsilon() -> Self {
        Self::from_f64(2.0).powi(1 - Self::precision_bits() as i32)
    }

    fn powi(&self, n: i32) -> Self {
        let mut base = if n < 0 { Self::one() / self.clone() } else { self.clone() };
        let mut e = n.unsigned_abs();
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

    fn atan2(y: &Self, x: &Self) -> Self {
        let zero = Self::zero();
        if *x > zero {
            (y.clone() / x.clone()).atan()
        } else if *x < zero {
            let base = (y.clone() / x.clone()).atan();
            if *y >= zero {
                base + Self::pi()
            } else {
                base - Self::pi()
            }
        } else if *y > zero {
            Self::pi() / Self::from_f64(2.0)
        } else if *y < zero {
            -Self::pi() / Self::from_f64(2.0)
        } else {
            zero
        }
    }

    /// `(m, e)` with `self = m / 2^e` exactly, when the representation is
    /// cheap to extract. Used to evaluate polynomials with exact integer
    /// arithmetic where floating Horner would cancel.
    fn to_dyadic(&self) -> Option<(BigInt, u32)> {
        None
    }

    /// Integer value if `self` is exactly an integer in `i64` range.
    fn as_exact_integer(&self) -> Option<i64> {
        if !self.is_finite() || self.floor() != *self {
            return None;
        }
        let f = self.to_f64();
        if f.abs() < 9.0e15 {
            Some(f as i64)
        } else {
            None
        }
    }
}

impl Real for f64 {
    const NAME: &'static str = "f64";

    fn to_dyadic(&self) -> Option<(BigInt, u32)> {
        if !self.is_finite() {
            return None;
        }
        if *self == 0.0 {
            return Some((BigInt::from(0), 0));
        }
        let bits = self.to_bits();
        let exp_field = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if exp_field == 0 { (frac, -1074) } else { (frac | (1u64 << 52), exp_field - 1075) };
        let mut m = BigInt::from(mant);
        if *self < 0.0 {
            m = -m;
        }
        if exp >= 0 {
            Some((m << exp as usize, 0))
        } else {
            Some((m, (-exp) as u32))
        }
    }

    fn precision_bits() -> u32 {
        f64::MANTISSA_DIGITS
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn from_bigint(x: &BigInt) -> Self {
        x.to_f64().unwrap_or(f64::NAN)
    }
    fn from_ratio(x: &BigRational) -> Self {
        x.to_f64().unwrap_or(f64::NAN)
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn atan(&self) -> Self {
        f64::atan(*self)
    }
    fn floor(&self) -> Self {
        f64::floor(*self)
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn epsilon() -> Self {
        f64::EPSILON
    }
    fn powi(&self, n: i32) -> Self {
        f64::powi(*self, n)
    }
    fn atan2(y: &Self, x: &Self) -> Self {
        f64::atan2(*y, *x)
    }
}
