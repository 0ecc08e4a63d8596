use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::{BernoulliTable, SpecFun};
use crate::complex::{self, Cx};
use crate::error::{Error, Result};
use crate::real::Real;

/// `zeta(2m) = (-1)^{m+1} B_{2m} (2 pi)^{2m} / (2 (2m)!)`, returned as the
/// rational factor of `pi^{2m}` together with the exponent `2m`.
pub fn zeta_even(m: usize) -> Result<(BigRational, u32)> {
    if m == 0 {
        return Err(Error::Domain("zeta_even requires m >= 1".into()));
    }
    let table = BernoulliTable::shared();
    let b = table.number(2 * m)?;
    let mut fact = BigInt::one();
    for j in 2..=(2 * m) {
        fact *= BigInt::from(j);
    }
    let pow2 = BigInt::one() << (2 * m);
    let mut q = b * BigRational::from_integer(pow2) / BigRational::from_integer(fact * BigInt::from(2));
    if m % 2 == 0 {
        q = -q;
    }
    Ok((q, (2 * m) as u32))
}

/// Sign of `zeta(x)` for real `x != 1` read off from the location of the
/// trivial zeros: positive for `x > 1`, negative on `(-2, 1)`, alternating
/// between consecutive negative even integers, zero at them.
pub fn zeta_sign_real(x: f64) -> i32 {
    if x > 1.0 {
        return 1;
    }
    if x > -2.0 {
        return -1;
    }
    if x == x.floor() && (x as i64) % 2 == 0 {
        return 0;
    }
    // x in (-2k-2, -2k) for k >= 1
    let k = ((-x) / 2.0).floor() as i64;
    if k % 2 == 1 {
        1
    } else {
        -1
    }
}

impl<T: Real> SpecFun<T> {
    /// Riemann zeta function for complex `s != 1`.
    ///
    /// Exact values are used at integers (`0`, trivial zeros, negative odd
    /// integers via Bernoulli numbers, positive even integers via
    /// [`zeta_even`]); `Re s < -1` goes through the functional equation and
    /// everything else through the Euler-Maclaurin tail scheme.
    pub fn zeta(&self, s: &Cx<T>) -> Result<Cx<T>> {
        complex::ensure_finite(s, "zeta argument")?;
        if let Some(n) = complex::exact_integer(s) {
            if let Some(v) = self.zeta_at_integer(n)? {
                return Ok(complex::real(v));
            }
        }
        if s.re < T::from_f64(-1.0) {
            let w = complex::real(T::one()) - s.clone();
            let m = self.zeta_terms_needed(&w);
            return self.zeta_reflected(s, m);
        }
        let m = self.zeta_terms_needed(s);
        Ok(self.zeta_em(s, m, self.zeta_k))
    }

    /// Same pipeline as [`SpecFun::zeta`] but with a fixed number `m` of
    /// explicit Euler-Maclaurin terms and no exact-value shortcuts.
    pub fn zeta_with_terms(&self, s: &Cx<T>, m: usize) -> Result<Cx<T>> {
        complex::ensure_finite(s, "zeta argument")?;
        if complex::exact_integer(s) == Some(1) {
            return Err(Error::Pole { function: "zeta", at: "1".into() });
        }
        if s.re < T::from_f64(-1.0) {
            return self.zeta_reflected(s, m);
        }
        Ok(self.zeta_em(s, m, self.zeta_k))
    }

    fn zeta_at_integer(&self, n: i64) -> Result<Option<T>> {
        if n == 1 {
            return Err(Error::Pole { function: "zeta", at: "1".into() });
        }
        if n == 0 {
            return Ok(Some(T::from_f64(-0.5)));
        }
        if n < 0 && n % 2 == 0 {
            return Ok(Some(T::zero()));
        }
        if n < 0 {
            // zeta(1 - 2k) = -B_{2k} / (2k)
            let two_k = (1 - n) as usize;
            if let Ok(b) = self.bernoulli.number(two_k) {
                let v = -b / BigRational::from_integer(BigInt::from(two_k));
                return Ok(Some(T::from_ratio(&v)));
            }
            return Ok(None);
        }
        if n % 2 == 0 && (n as usize) <= self.bernoulli.capacity() {
            let (q, e) = zeta_even((n / 2) as usize)?;
            return Ok(Some(self.rational_times_pi_power(&q, e)));
        }
        Ok(None)
    }

    /// `zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1-s) zeta(1-s)`.
    fn zeta_reflected(&self, s: &Cx<T>, m: usize) -> Result<Cx<T>> {
        let w = complex::real(T::one()) - s.clone();
        let zw = self.zeta_em(&w, m, self.zeta_k);
        let g = self.gamma(&w)?;
        let half_pi_s = s.clone() * (self.pi.clone() / T::from_f64(2.0));
        let sine = complex::sin(&half_pi_s);
        let factor = complex::pow_real_base(&self.ln_2pi, s) / self.pi.clone();
        Ok(factor * sine * g * zw)
    }

    /// Euler-Maclaurin evaluation with `m` explicit terms and `k` Bernoulli
    /// corrections:
    /// `sum_{n<m} n^{-s} + m^{1-s}/(s-1) + m^{-s}/2 + sum_j B_{2j}/(2j)! (s)_{2j-1} m^{1-s-2j}`.
    pub fn zeta_em(&self, s: &Cx<T>, m: usize, k: usize) -> Cx<T> {
        let one = complex::real(T::one());
        let neg_s = -s.clone();
        let mut partial = complex::real(T::zero());
        for n in 1..m {
            partial = partial + complex::pow_real_base(&self.ln_int(n), &neg_s);
        }
        let ln_m = self.ln_int(m);
        let m_neg_s = complex::pow_real_base(&ln_m, &neg_s);
        let mt = T::from_f64(m as f64);
        let mut tail = m_neg_s.clone() * mt.clone() / (s.clone() - one.clone()) + m_neg_s.clone() * T::from_f64(0.5);
        // (s)_{2j-1} m^{1-s-2j}
        let inv_m = T::one() / mt;
        let inv_m2 = inv_m.clone() * inv_m.clone();
        let mut poch = s.clone();
        let mut mpow = m_neg_s * inv_m;
        let k = k.min(self.b2k_over_fact.len() - 1);
        for j in 1..=k {
            if j > 1 {
                let a = s.clone() + complex::real(T::from_f64((2 * j - 3) as f64));
                let b = s.clone() + complex::real(T::from_f64((2 * j - 2) as f64));
                poch = poch * a * b;
                mpow = mpow * inv_m2.clone();
            }
            tail = tail + poch.clone() * mpow.clone() * self.b2k_over_fact[j].clone();
        }
        partial + tail
    }

    /// Number of explicit terms so the Euler-Maclaurin remainder bound
    /// `|(s)_{2K+1} B_{2K}| / ((2K)! (Re s + 2K)) M^{-Re s - 2K}` drops below
    /// the working precision.
    pub(crate) fn zeta_terms_needed(&self, s: &Cx<T>) -> usize {
        let k = self.zeta_k;
        let re = s.re.to_f64();
        let im = s.im.to_f64();
        let denom = re + 2.0 * k as f64;
        if denom <= 0.0 {
            return 4 * self.zeta_m;
        }
        // ln |(s)_{2K+1}|
        let mut ln_poch = 0.0;
        for j in 0..=(2 * k) {
            let r = re + j as f64;
            ln_poch += 0.5 * (r * r + im * im).max(1e-300).ln();
        }
        // |B_{2K}| / (2K)! ~ 2 (2 pi)^{-2K}
        let ln_b = 2f64.ln() - 2.0 * k as f64 * (2.0 * std::f64::consts::PI).ln();
        let target = -(T::precision_bits() as f64 + 4.0) * std::f64::consts::LN_2;
        let mut m = self.zeta_m.max(2);
        loop {
            let est = ln_poch + ln_b - denom.ln() - denom * (m as f64).ln();
            if est < target || m >= 1 << 16 {
                return m;
            }
            m += m / 4 + 1;
        }
    }
}
