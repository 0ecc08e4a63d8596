use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;

use crate::coeffs::half_pochhammer_over_factorial;
use crate::complex::{self, Cx};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::real::Real;

/// A truncated series together with the magnitude of its last included term.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesSum<T: Real> {
    pub value: Cx<T>,
    pub last_term: T,
}

fn odd_positive(s: &Cx<impl Real>) -> Option<i64> {
    match complex::exact_integer(s) {
        Some(k) if k > 0 && k % 2 == 1 => Some(k),
        _ => None,
    }
}

impl<T: Real> Engine<T> {
    /// `V_s = 2^{-s} Gamma((1-s)/2) / (sqrt(pi) Gamma(1 - s/2))`.
    pub fn v_s(&self, s: &Cx<T>) -> Result<Cx<T>> {
        complex::ensure_finite(s, "s")?;
        if let Some(k) = complex::exact_integer(s) {
            if k > 0 && k % 2 == 1 {
                return Err(Error::Pole { function: "V_s", at: format!("{k} (use the odd-integer expansion)") });
            }
            if k > 0 {
                return Ok(complex::real(T::zero()));
            }
            if k == 0 {
                return Ok(complex::real(T::one()));
            }
            if k % 2 == 0 {
                let m = (-k / 2) as u64;
                let c = binomial(BigInt::from(2 * m), BigInt::from(m));
                return Ok(complex::real(T::from_bigint(&c)));
            }
        }
        let one = complex::real(T::one());
        let half = T::from_f64(0.5);
        let a = (one.clone() - s.clone()) * half.clone();
        let b = one - s.clone() * half;
        let two_pow = complex::pow_real_base(&T::from_f64(2.0).ln(), &(-s.clone()));
        Ok(two_pow * self.sf.gamma(&a)? * self.sf.rgamma(&b)? / self.sf.sqrt_pi.clone())
    }

    /// `V_s = pi^{-s} sum_n alpha_n(s) (1/2)^{2n} / (2n - s + 1)`.
    pub fn v_s_series(&self, s: &Cx<T>, n_max: usize) -> Result<SeriesSum<T>> {
        complex::ensure_finite(s, "s")?;
        if let Some(k) = odd_positive(s) {
            return Err(Error::Pole { function: "V_s", at: k.to_string() });
        }
        let mut acc = complex::real(T::zero());
        let mut last = T::zero();
        let mut quarter = T::one();
        for n in 0..=n_max {
            let denom = complex::real(T::from_f64((2 * n + 1) as f64)) - s.clone();
            let term = self.alpha_eval(n, s)? * quarter.clone() / denom;
            last = complex::abs(&term);
            acc = acc + term;
            quarter = quarter / T::from_f64(4.0);
        }
        let pi_pow = complex::pow_real_base(&self.sf.pi.ln(), &(-s.clone()));
        Ok(SeriesSum { value: acc * pi_pow.clone(), last_term: last * complex::abs(&pi_pow) })
    }

    /// `V_s = 2^{-s} Gamma(s/2) tan(pi s / 2) / (sqrt(pi) Gamma((1+s)/2))`,
    /// defined away from the integers other than the positive even ones.
    pub fn v_s_alt(&self, s: &Cx<T>) -> Result<Cx<T>> {
        complex::ensure_finite(s, "s")?;
        if let Some(k) = complex::exact_integer(s) {
            if k > 0 && k % 2 == 0 {
                return Ok(complex::real(T::zero()));
            }
            return Err(Error::Domain(format!("the tangent form is indeterminate at s = {k}")));
        }
        let half = T::from_f64(0.5);
        let a = s.clone() * half.clone();
        let b = (s.clone() + complex::real(T::one())) * half.clone();
        let t = complex::tan(&(s.clone() * (self.sf.pi.clone() * half)));
        let two_pow = complex::pow_real_base(&T::from_f64(2.0).ln(), &(-s.clone()));
        Ok(two_pow * self.sf.gamma(&a)? * t * self.sf.rgamma(&b)? / self.sf.sqrt_pi.clone())
    }

    /// Coefficient `(1/pi) (1/2)_M / (2^{2M} M!)` of `N^2 log N` at `s = 2M + 1`.
    pub fn log_coefficient(&self, big_m: usize) -> T {
        let q = half_pochhammer_over_factorial(big_m) / BigRational::from_integer(BigInt::from(1) << (2 * big_m));
        T::from_ratio(&q) / self.sf.pi.clone()
    }

    /// `G_M` from the digamma closed form
    /// `(2^{-2M}/pi) ((1/2)_M / M!) [alpha_M'(2M+1)/alpha_M(2M+1) + psi(M+1)/2 - psi(M+1/2)/2 - log pi]`.
    pub fn g_constant(&self, big_m: usize) -> Result<T> {
        let poly = self.alpha.get(big_m)?;
        let s = BigRational::from_integer(BigInt::from(2 * big_m + 1));
        let ratio = self.alpha.derivative_at_odd(big_m)? / poly.eval_exact(&s);
        let half = T::from_f64(0.5);
        let m = T::from_f64(big_m as f64);
        let psi_a = self.sf.digamma(&(m.clone() + T::one()))?;
        let psi_b = self.sf.digamma(&(m + half.clone()))?;
        let bracket = T::from_ratio(&ratio) + half.clone() * psi_a - half * psi_b - self.sf.pi.ln();
        Ok(self.log_coefficient(big_m) * bracket)
    }

    /// `G_M` from its defining series
    /// `alpha_M(s) / (2^{s-1} pi^s) log(1/2) + pi^{-s} sum_{n != M} alpha_n(s) (1/2)^{2n} / (2(n - M))`
    /// at `s = 2M + 1`.
    pub fn g_constant_series(&self, big_m: usize, n_max: usize) -> Result<SeriesSum<T>> {
        let s = complex::real(T::from_f64((2 * big_m + 1) as f64));
        let pi_s = self.sf.pi.powi(2 * big_m as i32 + 1);
        let alpha_m = self.alpha_eval(big_m, &s)?.re;
        let lead = -alpha_m * T::from_f64(2.0).ln() / (T::from_f64(2.0).powi(2 * big_m as i32) * pi_s.clone());
        let mut acc = T::zero();
        let mut last = T::zero();
        let mut quarter = T::one();
        for n in 0..=n_max {
            if n != big_m {
                let d = T::from_f64(2.0 * (n as f64 - big_m as f64));
                let term = self.alpha_eval(n, &s)?.re * quarter.clone() / d;
                last = term.abs();
                acc = acc + term;
            }
            quarter = quarter / T::from_f64(4.0);
        }
        Ok(SeriesSum { value: complex::real(lead + acc / pi_s.clone()), last_term: last / pi_s })
    }
}
