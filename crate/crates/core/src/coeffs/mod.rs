//! Expansion coefficients: the exact `alpha_n(s)` polynomials, their
//! numeric evaluation, and the combined `c_n(s) = 2 (2 pi)^{-s} alpha_n(s) zeta(s - 2n)`.

mod alpha;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

pub use alpha::{alpha_table, half_pochhammer_over_factorial, AlphaJson, AlphaPolynomial, AlphaTable, ALPHA_LIMIT};

use crate::complex::{self, Cx};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::real::Real;
use crate::specfun::zeta_sign_real;

/// Default number of terms in [`Engine::divergence_profile`].
pub const DIVERGENCE_N_MAX: usize = 50;

/// `c_n(s)` together with the sign of `zeta(s - 2n)` when `s` is real and positive.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionCoefficient<T: Real> {
    pub n: usize,
    pub value: Cx<T>,
    pub sign_hint: Option<i32>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CoefficientJson {
    pub n: usize,
    pub value: [f64; 2],
    pub sign_hint: Option<i32>,
}

impl<T: Real> ExpansionCoefficient<T> {
    pub fn to_json(&self) -> CoefficientJson {
        CoefficientJson { n: self.n, value: [self.value.re.to_f64(), self.value.im.to_f64()], sign_hint: self.sign_hint }
    }
}

/// `c_n(2M)` exactly. It is rational because the powers of `pi` cancel.
pub fn c_coefficient_even(n: usize, big_m: usize) -> Result<BigRational> {
    if big_m == 0 {
        return Err(Error::Domain("exact even coefficients need s = 2M with M >= 1".into()));
    }
    let table = AlphaTable::shared();
    let poly = table.get(n)?;
    if n > big_m {
        return Ok(BigRational::zero());
    }
    let s = BigRational::from_integer(BigInt::from(2 * big_m));
    let zeta = if n == big_m {
        BigRational::new(BigInt::from(-1), BigInt::from(2))
    } else {
        table.zeta_ratio(big_m - n).clone()
    };
    let two_pow = BigRational::from_integer(BigInt::from(1) << (2 * big_m));
    Ok(BigRational::from_integer(BigInt::from(2)) * poly.eval_exact(&s) * zeta / two_pow)
}

impl<T: Real> Engine<T> {
    /// `alpha_n(s)`. When `s` converts exactly to a dyadic rational the
    /// polynomial is summed in exact integer arithmetic and rounded once;
    /// otherwise Horner's rule at working precision is used.
    pub fn alpha_eval(&self, n: usize, s: &Cx<T>) -> Result<Cx<T>> {
        if let (Some((mr, er)), Some((mi, ei))) = (s.re.to_dyadic(), s.im.to_dyadic()) {
            let e = er.max(ei);
            let re = mr << (e - er) as usize;
            let im = mi << (e - ei) as usize;
            let (vr, vi) = self.alpha.eval_dyadic(n, &re, &im, e)?;
            let pi_pow = self.sf.pi.powi(2 * n as i32);
            return Ok(Cx::new(T::from_ratio(&vr) * pi_pow.clone(), T::from_ratio(&vi) * pi_pow));
        }
        self.alpha_horner(n, s)
    }

    /// `alpha_n(s)` by Horner's rule at working precision.
    pub fn alpha_horner(&self, n: usize, s: &Cx<T>) -> Result<Cx<T>> {
        let row = self.alpha_num.get(n).ok_or(Error::Capacity { index: n, capacity: self.alpha.n_max() })?;
        let mut acc = complex::real(T::zero());
        for c in row.iter().rev() {
            acc = acc * s.clone() + complex::real(c.clone());
        }
        Ok(acc)
    }

    /// `alpha_n'(s)` from the numeric coefficients.
    pub fn alpha_derivative(&self, n: usize, s: &Cx<T>) -> Result<Cx<T>> {
        let row = self.alpha_num.get(n).ok_or(Error::Capacity { index: n, capacity: self.alpha.n_max() })?;
        let mut acc = complex::real(T::zero());
        for (j, c) in row.iter().enumerate().skip(1).rev() {
            acc = acc * s.clone() + complex::real(c.clone() * T::from_f64(j as f64));
        }
        Ok(acc)
    }

    /// `alpha_M'(2M+1)` from the exact finite sum.
    pub fn alpha_derivative_at_odd(&self, big_m: usize) -> Result<T> {
        let q = self.alpha.derivative_at_odd(big_m)?;
        Ok(self.sf.rational_times_pi_power(&q, (2 * big_m) as u32))
    }

    /// Max relative difference over `n <= n_max` between [`Engine::alpha_eval`]
    /// and the power series of `(z / (e^z - 1))^s e^{s z / 2}`, whose
    /// `z^{2n}` coefficients are `B_{2n}^{(s)}(s/2) / (2n)!`.
    ///
    /// The series is formed as `((z/2) / sinh(z/2))^s`, the same function
    /// written as an even series with coefficients `B_{2k}(1/2) / (2k)!`, and
    /// raised to the power `s` with Miller's recurrence.
    pub fn generalized_bernoulli_check(&self, n_max: usize, s: &Cx<T>) -> Result<T> {
        complex::ensure_finite(s, "s")?;
        if n_max > self.alpha.n_max() {
            return Err(Error::Capacity { index: n_max, capacity: self.alpha.n_max() });
        }
        let bern = &self.sf.bernoulli;
        // coefficient of z^{2k} in (z/2)/sinh(z/2)
        let mut f: Vec<T> = Vec::with_capacity(n_max + 1);
        let mut fact = BigInt::from(1);
        for k in 0..=n_max {
            if k > 0 {
                fact *= BigInt::from((2 * k - 1) * 2 * k);
            }
            let half = BigRational::new(BigInt::from(2), BigInt::from(1) << (2 * k)) - BigRational::from_integer(1.into());
            let c = half * bern.number(2 * k)? / BigRational::from_integer(fact.clone());
            f.push(T::from_ratio(&c));
        }
        // h = f^s: k h_k = sum_{j=1}^k ((s+1) j - k) f_j h_{k-j}
        let mut h: Vec<Cx<T>> = vec![complex::real(T::zero()); n_max + 1];
        h[0] = complex::real(T::one());
        let s1 = s.clone() + complex::real(T::one());
        for k in 1..=n_max {
            let mut acc = complex::real(T::zero());
            for j in 1..=k {
                let w = s1.clone() * T::from_f64(j as f64) - complex::real(T::from_f64(k as f64));
                acc = acc + w * h[k - j].clone() * f[j].clone();
            }
            h[k] = acc / T::from_f64(k as f64);
            if !complex::is_finite(&h[k]) {
                return Err(Error::Precision(format!("series coefficient {} overflowed", 2 * k)));
            }
        }
        let two_pi = self.sf.pi.clone() * T::from_f64(2.0);
        let mut worst = T::zero();
        let mut scale = T::one();
        for n in 0..=n_max {
            let sign = if n % 2 == 0 { T::one() } else { -T::one() };
            let via_series = h[n].clone() * (scale.clone() * sign);
            let via_table = self.alpha_eval(n, s)?;
            let diff = complex::abs(&(via_series.clone() - via_table.clone()));
            let a = complex::abs(&via_series);
            let b = complex::abs(&via_table);
            let denom = if a > b { a } else { b };
            if !denom.is_zero() {
                let r = diff / denom;
                if r > worst {
                    worst = r;
                }
            }
            scale = scale * two_pi.clone() * two_pi.clone();
        }
        Ok(worst)
    }

    /// `c_n(s) = 2 (2 pi)^{-s} alpha_n(s) zeta(s - 2n)`.
    pub fn c_coefficient(&self, n: usize, s: &Cx<T>) -> Result<ExpansionCoefficient<T>> {
        complex::ensure_finite(s, "s")?;
        let shifted = s.clone() - complex::real(T::from_f64((2 * n) as f64));
        if complex::exact_integer(&shifted) == Some(1) {
            return Err(Error::ExceptionalIndex { n, s: format_cx(s) });
        }
        let sign_hint = if s.im.is_zero() && s.re > T::zero() {
            Some(zeta_sign_real(shifted.re.to_f64()))
        } else {
            None
        };
        // exact rational route at positive even integers
        if let Some(k) = complex::exact_integer(s) {
            if k > 0 && k % 2 == 0 {
                let q = c_coefficient_even(n, (k / 2) as usize)?;
                return Ok(ExpansionCoefficient { n, value: complex::real(T::from_ratio(&q)), sign_hint });
            }
        }
        let alpha = self.alpha_eval(n, s)?;
        let zeta = self.sf.zeta(&shifted)?;
        let value = if complex::abs(&zeta).is_zero() {
            complex::real(T::zero())
        } else {
            self.two_over_two_pi_pow(s) * alpha * zeta
        };
        Ok(ExpansionCoefficient { n, value, sign_hint })
    }

    /// `2 (2 pi)^{-s}`.
    pub(crate) fn two_over_two_pi_pow(&self, s: &Cx<T>) -> Cx<T> {
        complex::pow_real_base(&self.sf.ln_2pi, &(-s.clone())) * T::from_f64(2.0)
    }

    /// `|c_n(s) N^{-2n}|` for `n = 0..=n_max`; `None` marks the exceptional
    /// index `s = 2n + 1`. Non-even `s` uses
    /// `c_n(s) = (-1)^n (2/pi) sin(pi s / 2) alpha_n(s) (2 pi)^{-2n} Gamma(2n+1-s) zeta(2n+1-s)`,
    /// which stays well conditioned as the terms grow.
    pub fn divergence_profile(&self, s: &T, big_n: u64, n_max: usize) -> Result<Vec<Option<T>>> {
        if !self.is_extended() {
            return Err(Error::Configuration(
                "the divergence profile needs extended precision (at least 50 digits)".into(),
            ));
        }
        if !s.is_finite() || *s <= T::zero() {
            return Err(Error::Domain("the divergence profile needs real s > 0".into()));
        }
        if big_n < 2 {
            return Err(Error::Domain("N must be at least 2".into()));
        }
        if n_max > self.alpha.n_max() {
            return Err(Error::Capacity { index: n_max, capacity: self.alpha.n_max() });
        }
        let s_cx = complex::real(s.clone());
        let inv_n2 = T::one() / T::from_f64((big_n * big_n) as f64);
        let even = matches!(s.as_exact_integer(), Some(k) if k % 2 == 0);
        let pi = self.sf.pi.clone();
        let sine = (pi.clone() * s.clone() / T::from_f64(2.0)).sin();
        let two_pi_sq = (pi.clone() * T::from_f64(2.0)) * (pi.clone() * T::from_f64(2.0));
        let mut out = Vec::with_capacity(n_max + 1);
        let mut npow = T::one();
        let mut tpow = T::one();
        for n in 0..=n_max {
            let arg = T::from_f64((2 * n + 1) as f64) - s.clone();
            if arg.as_exact_integer() == Some(0) {
                out.push(None);
            } else if even {
                let c = self.c_coefficient(n, &s_cx)?;
                out.push(Some(complex::abs(&c.value) * npow.clone()));
            } else {
                let arg_cx = complex::real(arg);
                let alpha = self.alpha_eval(n, &s_cx)?;
                let g = self.sf.gamma(&arg_cx)?;
                let z = self.sf.zeta(&arg_cx)?;
                let c = alpha * g * z * (T::from_f64(2.0) * sine.clone() / (pi.clone() * tpow.clone()));
                out.push(Some(complex::abs(&c) * npow.clone()));
            }
            npow = npow * inv_n2.clone();
            tpow = tpow * two_pi_sq.clone();
        }
        Ok(out)
    }

    /// Exact table rows as JSON objects.
    pub fn alpha_json(&self, n_max: usize) -> Result<Vec<AlphaJson>> {
        Ok(alpha_table(n_max)?.iter().map(|p| p.to_json()).collect())
    }
}

pub(crate) fn format_cx<T: Real>(s: &Cx<T>) -> String {
    let re = s.re.to_f64();
    let im = s.im.to_f64();
    if im == 0.0 {
        format!("{re}")
    } else if im < 0.0 {
        format!("{re}-{}i", -im)
    } else {
        format!("{re}+{im}i")
    }
}
