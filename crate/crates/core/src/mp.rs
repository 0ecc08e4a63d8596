//! Extended-precision real backed by `astro-float`.
//!
//! The working precision is process-global: values created after
//! [`set_precision_bits`] carry the new precision, and every arithmetic
//! result is rounded to it. Set it once before building an engine.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_traits::{Num, One, Zero};

use crate::real::Real;

/// Default extended precision: 256 bits, about 77 decimal digits.
pub const DEFAULT_MP_BITS: usize = 256;

static PRECISION: AtomicUsize = AtomicUsize::new(DEFAULT_MP_BITS);

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

/// Sets the global extended working precision (rounded up to whole 64-bit words).
pub fn set_precision_bits(bits: usize) {
    let words = bits.max(64).div_ceil(64);
    PRECISION.store(words * 64, AtomicOrdering::SeqCst);
}

pub fn precision_bits() -> usize {
    PRECISION.load(AtomicOrdering::Relaxed)
}

/// Bits needed to carry `digits` significant decimal digits.
pub fn bits_for_digits(digits: u32) -> usize {
    ((digits as f64) * std::f64::consts::LOG2_10).ceil() as usize + 8
}

fn with_cc<R>(f: impl FnOnce(&mut Consts) -> R) -> R {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

#[derive(Clone)]
pub struct Mp(BigFloat);

impl Mp {
    pub fn inner(&self) -> &BigFloat {
        &self.0
    }

    /// Full-precision decimal rendering.
    pub fn to_decimal_string(&self) -> String {
        with_cc(|cc| self.0.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| self.0.to_string())
    }

    pub fn parse(s: &str) -> Option<Mp> {
        let v = with_cc(|cc| BigFloat::parse(s, Radix::Dec, precision_bits(), RM, cc));
        if v.is_nan() {
            None
        } else {
            Some(Mp(v))
        }
    }
}

impl fmt::Debug for Mp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mp({})", self.0)
    }
}

impl fmt::Display for Mp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl PartialEq for Mp {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for Mp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $call:ident) => {
        impl $trait for Mp {
            type Output = Mp;
            fn $method(self, rhs: Mp) -> Mp {
                Mp(self.0.$call(&rhs.0, precision_bits(), RM))
            }
        }
        impl<'a> $trait<&'a Mp> for Mp {
            type Output = Mp;
            fn $method(self, rhs: &'a Mp) -> Mp {
                Mp(self.0.$call(&rhs.0, precision_bits(), RM))
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);
binop!(Div, div, div);

impl Rem for Mp {
    type Output = Mp;
    fn rem(self, rhs: Mp) -> Mp {
        Mp(self.0.rem(&rhs.0))
    }
}

impl Neg for Mp {
    type Output = Mp;
    fn neg(self) -> Mp {
        Mp(self.0.neg())
    }
}

impl Zero for Mp {
    fn zero() -> Self {
        Mp(BigFloat::from_f64(0.0, precision_bits()))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Mp {
    fn one() -> Self {
        Mp(BigFloat::from_f64(1.0, precision_bits()))
    }
}

impl Num for Mp {
    type FromStrRadixErr = String;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, String> {
        if radix != 10 {
            return Err(format!("unsupported radix {radix}"));
        }
        Mp::parse(s).ok_or_else(|| format!("cannot parse {s:?}"))
    }
}

impl Real for Mp {
    const NAME: &'static str = "mp";

    fn precision_bits() -> u32 {
        precision_bits() as u32
    }

    fn from_f64(x: f64) -> Self {
        Mp(BigFloat::from_f64(x, precision_bits()))
    }

    fn from_i64(x: i64) -> Self {
        Mp(BigFloat::from_i64(x, precision_bits()))
    }

    fn to_f64(&self) -> f64 {
        if self.0.is_nan() {
            return f64::NAN;
        }
        if self.0.is_inf_pos() {
            return f64::INFINITY;
        }
        if self.0.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        let Some((words, _, sign, exponent, _)) = self.0.as_raw_parts() else {
            return f64::NAN;
        };
        let n = words.len();
        if n == 0 || words[n - 1] == 0 {
            return 0.0;
        }
        let hi = words[n - 1] as f64;
        let lo = if n > 1 { words[n - 2] as f64 } else { 0.0 };
        let e = exponent as i32;
        // Split the scaling so large exponents do not overflow prematurely.
        let mant = (hi + lo * 2f64.powi(-64)) * 2f64.powi(-64);
        let v = mant * 2f64.powi(e / 2) * 2f64.powi(e - e / 2);
        if sign == Sign::Neg {
            -v
        } else {
            v
        }
    }

    fn pi() -> Self {
        Mp(with_cc(|cc| cc.pi(precision_bits(), RM)))
    }
    fn sqrt(&self) -> Self {
        Mp(self.0.sqrt(precision_bits(), RM))
    }
    fn exp(&self) -> Self {
        Mp(with_cc(|cc| self.0.exp(precision_bits(), RM, cc)))
    }
    fn ln(&self) -> Self {
        Mp(with_cc(|cc| self.0.ln(precision_bits(), RM, cc)))
    }
    fn sin(&self) -> Self {
        Mp(with_cc(|cc| self.0.sin(precision_bits(), RM, cc)))
    }
    fn cos(&self) -> Self {
        Mp(with_cc(|cc| self.0.cos(precision_bits(), RM, cc)))
    }
    fn atan(&self) -> Self {
        Mp(with_cc(|cc| self.0.atan(precision_bits(), RM, cc)))
    }
    fn floor(&self) -> Self {
        Mp(self.0.floor())
    }
    fn is_finite(&self) -> bool {
        !self.0.is_nan() && !self.0.is_inf()
    }
    fn abs(&self) -> Self {
        Mp(self.0.abs())
    }
    fn powi(&self, n: i32) -> Self {
        let p = self.0.powi(n.unsigned_abs() as usize, precision_bits(), RM);
        if n < 0 {
            Mp(p.reciprocal(precision_bits(), RM))
        } else {
            Mp(p)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_f64() {
        for v in [1.0, -3.5, 0.1, 1e-300, 6.02e23, 123456789.125] {
            assert_eq!(Mp::from_f64(v).to_f64(), v);
        }
        assert_eq!(Mp::zero().to_f64(), 0.0);
    }

    #[test]
    fn carries_more_than_double_precision() {
        let third = Mp::one() / Mp::from_f64(3.0);
        let resid = third.clone() * Mp::from_f64(3.0) - Mp::one();
        assert!(resid.abs().to_f64() < 1e-70);
        let pi = <Mp as Real>::pi();
        let s = pi.sin();
        assert!(s.abs().to_f64() < 1e-70);
    }

    #[test]
    fn precision_helpers() {
        assert!(bits_for_digits(50) >= 166);
    }
}
