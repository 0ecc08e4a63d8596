//! Complex elementary functions over any [`Real`].
//!
//! `num_complex` only provides transcendental functions for `Float`
//! (which requires `Copy`), so the handful we need are written here.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::real::Real;

pub type Cx<T> = Complex<T>;

pub fn real<T: Real>(x: T) -> Cx<T> {
    Complex::new(x, T::zero())
}

pub fn from_f64<T: Real>(re: f64, im: f64) -> Cx<T> {
    Complex::new(T::from_f64(re), T::from_f64(im))
}

pub fn to_f64<T: Real>(z: &Cx<T>) -> Complex<f64> {
    Complex::new(z.re.to_f64(), z.im.to_f64())
}

pub fn is_real<T: Real>(z: &Cx<T>) -> bool {
    z.im.is_zero()
}

pub fn is_finite<T: Real>(z: &Cx<T>) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Rejects NaN and infinite components at API boundaries.
pub fn ensure_finite<T: Real>(z: &Cx<T>, what: &str) -> Result<()> {
    if is_finite(z) {
        Ok(())
    } else {
        Err(Error::NonFinite(what.to_string()))
    }
}

/// Exact integer value when `z` is real and integral.
pub fn exact_integer<T: Real>(z: &Cx<T>) -> Option<i64> {
    if is_real(z) {
        z.re.as_exact_integer()
    } else {
        None
    }
}

pub fn abs<T: Real>(z: &Cx<T>) -> T {
    let (a, b) = (z.re.abs(), z.im.abs());
    if a.is_zero() {
        return b;
    }
    if b.is_zero() {
        return a;
    }
    let (big, small) = if a >= b { (a, b) } else { (b, a) };
    let r = small / big.clone();
    big * (T::one() + r.clone() * r).sqrt()
}

pub fn exp<T: Real>(z: &Cx<T>) -> Cx<T> {
    let m = z.re.exp();
    if z.im.is_zero() {
        return Complex::new(m, T::zero());
    }
    Complex::new(m.clone() * z.im.cos(), m * z.im.sin())
}

/// Principal logarithm.
pub fn ln<T: Real>(z: &Cx<T>) -> Cx<T> {
    if z.im.is_zero() && z.re > T::zero() {
        return Complex::new(z.re.ln(), T::zero());
    }
    Complex::new(abs(z).ln(), T::atan2(&z.im, &z.re))
}

/// `a^s := exp(s ln a)` for real `a > 0`.
pub fn pow_real_base<T: Real>(ln_a: &T, s: &Cx<T>) -> Cx<T> {
    exp(&Complex::new(s.re.clone() * ln_a.clone(), s.im.clone() * ln_a.clone()))
}

pub fn sin<T: Real>(z: &Cx<T>) -> Cx<T> {
    if z.im.is_zero() {
        return Complex::new(z.re.sin(), T::zero());
    }
    let e = z.im.exp();
    let ei = T::one() / e.clone();
    let two = T::from_f64(2.0);
    let cosh = (e.clone() + ei.clone()) / two.clone();
    let sinh = (e - ei) / two;
    Complex::new(z.re.sin() * cosh, z.re.cos() * sinh)
}

pub fn cos<T: Real>(z: &Cx<T>) -> Cx<T> {
    if z.im.is_zero() {
        return Complex::new(z.re.cos(), T::zero());
    }
    let e = z.im.exp();
    let ei = T::one() / e.clone();
    let two = T::from_f64(2.0);
    let cosh = (e.clone() + ei.clone()) / two.clone();
    let sinh = (e - ei) / two;
    Complex::new(z.re.cos() * cosh, -(z.re.sin() * sinh))
}

pub fn tan<T: Real>(z: &Cx<T>) -> Cx<T> {
    sin(z) / cos(z)
}

pub fn powi<T: Real>(z: &Cx<T>, n: u32) -> Cx<T> {
    let mut acc = Complex::new(T::one(), T::zero());
    let mut base = z.clone();
    let mut e = n;
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

/// Sign of `+1`, `-1` or `0` for a real value.
pub fn signum<T: Real>(x: &T) -> i32 {
    if x.is_zero() {
        0
    } else if *x > T::zero() {
        1
    } else {
        -1
    }
}

/// Parses `a`, `a+bi`, `a-bi`, `bi` (no spaces).
pub fn parse_complex(text: &str) -> std::result::Result<Complex<f64>, String> {
    let t = text.trim_end();
    if t.is_empty() || t.contains(char::is_whitespace) {
        return Err(format!("invalid complex number {text:?}: expected a, a+bi or a-bi without spaces"));
    }
    let bad = || format!("invalid complex number {text:?}: expected a, a+bi or a-bi without spaces");
    let finite = |v: f64| if v.is_finite() { Ok(v) } else { Err(bad()) };
    if let Some(body) = t.strip_suffix('i') {
        // split at the last sign that is not part of an exponent or the leading sign
        let bytes = body.as_bytes();
        let mut split = None;
        for idx in (1..bytes.len()).rev() {
            let c = bytes[idx];
            if (c == b'+' || c == b'-') && !matches!(bytes[idx - 1], b'e' | b'E') {
                split = Some(idx);
                break;
            }
        }
        let (re_str, im_str) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("0", body),
        };
        let im_str = match im_str {
            "" | "+" => "1",
            "-" => "-1",
            other => other,
        };
        let re: f64 = re_str.parse().map_err(|_| bad())?;
        let im: f64 = im_str.parse().map_err(|_| bad())?;
        Ok(Complex::new(finite(re)?, finite(im)?))
    } else {
        let re: f64 = t.parse().map_err(|_| bad())?;
        Ok(Complex::new(finite(re)?, 0.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_cli_syntax() {
        assert_eq!(parse_complex("2").unwrap(), Complex::new(2.0, 0.0));
        assert_eq!(parse_complex("1+0i").unwrap(), Complex::new(1.0, 0.0));
        assert_eq!(parse_complex("-1.2+0.7i").unwrap(), Complex::new(-1.2, 0.7));
        assert_eq!(parse_complex("0.5-1.3i").unwrap(), Complex::new(0.5, -1.3));
        assert_eq!(parse_complex("1e-3-2e+1i").unwrap(), Complex::new(1e-3, -20.0));
        assert_eq!(parse_complex("2i").unwrap(), Complex::new(0.0, 2.0));
        assert_eq!(parse_complex("-i").unwrap(), Complex::new(0.0, -1.0));
        assert!(parse_complex("1 + 2i").is_err());
        assert!(parse_complex("abc").is_err());
        assert!(parse_complex("nan").is_err());
        assert!(parse_complex("").is_err());
    }

    #[test]
    fn elementary_functions_agree_with_num_complex() {
        let z = Complex::new(0.3f64, -1.7);
        let close = |a: Complex<f64>, b: Complex<f64>| (a - b).norm() < 1e-14 * (1.0 + b.norm());
        assert!(close(exp(&z), z.exp()));
        assert!(close(ln(&z), z.ln()));
        assert!(close(sin(&z), z.sin()));
        assert!(close(cos(&z), z.cos()));
        assert!(close(powi(&z, 5), z.powu(5)));
        assert!((abs(&z) - z.norm()).abs() < 1e-15);
    }
}
