use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::complex::{self, Cx};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::real::Real;
use crate::specfun::{pochhammer, SHARED_CAPACITY};

/// Upper integration limit `y >= 1` and Euler-Maclaurin order `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IncompleteZetaParams {
    pub y: f64,
    pub p: usize,
}

impl IncompleteZetaParams {
    pub fn new(y: f64, p: usize) -> Result<Self> {
        if !y.is_finite() {
            return Err(Error::NonFinite("y".into()));
        }
        if y < 1.0 {
            return Err(Error::Domain(format!("y must be at least 1, got {y}")));
        }
        if 2 * p + 1 > SHARED_CAPACITY {
            return Err(Error::Capacity { index: 2 * p + 1, capacity: SHARED_CAPACITY });
        }
        Ok(IncompleteZetaParams { y, p })
    }

    /// `|(s)_{2p+1} B_{2p}| / ((2p)! (Re s + 2p)) y^{-Re s - 2p}`, the bound on
    /// the distance to `zeta(s)`; `None` unless `Re s + 2p > 0`.
    pub fn error_bound(&self, s: Complex64) -> Option<f64> {
        let sigma = s.re + 2.0 * self.p as f64;
        if sigma <= 0.0 {
            return None;
        }
        let poch = pochhammer(&s, 2 * self.p + 1).norm();
        let b = crate::specfun::bernoulli_number(2 * self.p).ok()?;
        let mut fact = 1.0;
        for j in 2..=(2 * self.p) {
            fact *= j as f64;
        }
        let b = <f64 as Real>::from_ratio(&b).abs();
        Some(poch * b / (fact * sigma) * self.y.powf(-sigma))
    }
}

impl<T: Real> Engine<T> {
    /// `zeta_{y,p}(s) = 1/(s-1) + 1/2 + sum_{k<=p} B_{2k}/(2k)! (s)_{2k-1}
    ///  - (s)_{2p+1}/(2p+1)! int_1^y C_{2p+1}(x) x^{-s-2p-1} dx`.
    pub fn incomplete_zeta(&self, s: &Cx<T>, params: &IncompleteZetaParams) -> Result<Cx<T>> {
        complex::ensure_finite(s, "s")?;
        IncompleteZetaParams::new(params.y, params.p)?;
        if complex::exact_integer(s) == Some(1) {
            return Err(Error::Pole { function: "incomplete zeta", at: "1 (use the psi quantity)".into() });
        }
        let one = complex::real(T::one());
        let mut acc = one.clone() / (s.clone() - one) + complex::real(T::from_f64(0.5));
        let mut poch = s.clone();
        for k in 1..=params.p {
            if k > 1 {
                let a = s.clone() + complex::real(T::from_f64((2 * k - 3) as f64));
                let b = s.clone() + complex::real(T::from_f64((2 * k - 2) as f64));
                poch = poch * a * b;
            }
            acc = acc + poch.clone() * self.sf.b2k_over_fact[k].clone();
        }
        let full = pochhammer(s, 2 * params.p + 1);
        if params.y == 1.0 || complex::abs(&full).is_zero() {
            return Ok(acc);
        }
        let a = s.clone() + complex::real(T::from_f64((2 * params.p + 1) as f64));
        let integral = self.bernoulli_integral(&a, params)?;
        let mut fact = T::one();
        for j in 2..=(2 * params.p + 1) {
            fact = fact * T::from_f64(j as f64);
        }
        Ok(acc - full * integral / fact)
    }

    /// `Psi_{y,p} = 1/2 + sum_{k<=p} B_{2k}/(2k) - int_1^y C_{2p+1}(x) x^{-2p-2} dx`.
    pub fn psi_quantity(&self, params: &IncompleteZetaParams) -> Result<T> {
        IncompleteZetaParams::new(params.y, params.p)?;
        let mut acc = T::from_f64(0.5);
        for k in 1..=params.p {
            acc = acc + self.sf.b2k[k].clone() / T::from_f64((2 * k) as f64);
        }
        if params.y == 1.0 {
            return Ok(acc);
        }
        let a = complex::real(T::from_f64((2 * params.p + 2) as f64));
        Ok(acc - self.bernoulli_integral(&a, params)?.re)
    }

    /// `int_1^y C_{2p+1}(x) x^{-a} dx`, one quadrature per unit interval.
    fn bernoulli_integral(&self, a: &Cx<T>, params: &IncompleteZetaParams) -> Result<Cx<T>> {
        let coeffs: Vec<T> =
            self.sf.bernoulli.poly_coeffs(2 * params.p + 1)?.iter().map(|c| T::from_ratio(c)).collect();
        let neg_a = -a.clone();
        let integrand = |off: &T, x: &T| {
            let b = coeffs.iter().rev().fold(T::zero(), |acc, c| acc * off.clone() + c.clone());
            complex::pow_real_base(&x.ln(), &neg_a) * b
        };
        let whole = params.y.floor() as u64;
        let mut pieces: Vec<(T, T)> = (1..whole).map(|j| (T::from_f64(j as f64), T::from_f64((j + 1) as f64))).collect();
        if params.y > whole as f64 {
            pieces.push((T::from_f64(whole as f64), T::from_f64(params.y)));
        }
        let rule = &self.sf.quadrature;
        // tolerance relative to the largest piece, which sits at one of the ends
        let mut scale = T::zero();
        for (lo, hi) in [pieces.first(), pieces.last()].into_iter().flatten() {
            let v = complex::abs(&rule.fine.apply(lo, hi, &integrand));
            if v > scale {
                scale = v;
            }
        }
        let floor = T::epsilon() * T::from_f64(64.0);
        let cfg_tol = T::from_f64(self.cfg.tolerance);
        let tol = if cfg_tol > floor { cfg_tol } else { floor };
        let mut acc = crate::sum::ComplexSum::default();
        for (lo, hi) in &pieces {
            acc.add(rule.integrate(lo, hi, &integrand, &tol, &scale));
        }
        Ok(acc.value())
    }
}
