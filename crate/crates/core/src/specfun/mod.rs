//! Special functions: Bernoulli machinery, Pochhammer symbol, Gamma,
//! digamma and the Riemann zeta function for complex argument.
//!
//! Numeric kernels live on [`SpecFun`], which caches the constants and
//! Bernoulli numbers converted to the working precision of `T`. The
//! free functions at the bottom are double-precision conveniences backed by
//! a shared instance.

mod bernoulli;
mod gamma;
mod quadrature;
mod zeta;

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

pub use bernoulli::{
    bernoulli_number, bernoulli_poly, periodic_bernoulli, BernoulliTable, DEFAULT_CAPACITY, SHARED_CAPACITY,
};
pub use quadrature::{AdaptiveRule, GaussLegendre};
pub use zeta::{zeta_even, zeta_sign_real};

use crate::complex::{self, Cx};
use crate::config::PrecisionConfig;
use crate::error::Result;
use crate::real::Real;

/// Precision-specific tables for the special-function kernels.
#[derive(Debug, Clone)]
pub struct SpecFun<T: Real> {
    pub(crate) bernoulli: Arc<BernoulliTable>,
    /// `B_{2k}` for `k = 0..`.
    pub(crate) b2k: Vec<T>,
    /// `B_{2k} / (2k)!`.
    pub(crate) b2k_over_fact: Vec<T>,
    pub(crate) pi: T,
    pub(crate) ln_2pi: T,
    pub(crate) sqrt_pi: T,
    pub(crate) euler_gamma: T,
    pub(crate) zeta_m: usize,
    pub(crate) zeta_k: usize,
    /// Argument threshold for the Stirling and digamma asymptotic series.
    pub(crate) asymptotic_shift: f64,
    pub(crate) quadrature: AdaptiveRule<T>,
    ln_int: Vec<T>,
}

impl<T: Real> SpecFun<T> {
    pub fn new(cfg: &PrecisionConfig) -> Self {
        let bernoulli = BernoulliTable::shared();
        let bits = T::precision_bits();
        let kmax = bernoulli.capacity() / 2;
        let mut b2k = Vec::with_capacity(kmax + 1);
        let mut b2k_over_fact = Vec::with_capacity(kmax + 1);
        let mut fact = BigInt::one();
        for k in 0..=kmax {
            if k > 0 {
                fact *= BigInt::from(2 * k - 1) * BigInt::from(2 * k);
            }
            let b = bernoulli.number(2 * k).expect("within shared capacity");
            b2k.push(T::from_ratio(b));
            b2k_over_fact.push(T::from_ratio(&(b / BigRational::from_integer(fact.clone()))));
        }
        let pi = T::pi();
        let extended = bits > 64;
        // Both asymptotic series lose accuracy like exp(-2 pi x) once
        // truncated optimally, so the shift grows linearly with the bits.
        let asymptotic_shift = if extended { 10.0 + 0.14 * bits as f64 } else { 10.0 };
        let zeta_k = if extended { (bits as usize / 5).clamp(cfg.zeta_k, kmax - 1) } else { cfg.zeta_k.min(kmax - 1) };
        let quad_order = if extended { cfg.quadrature_order.max(bits as usize / 8) } else { cfg.quadrature_order };
        let mut sf = SpecFun {
            bernoulli,
            b2k,
            b2k_over_fact,
            ln_2pi: (pi.clone() * T::from_f64(2.0)).ln(),
            sqrt_pi: pi.sqrt(),
            pi,
            euler_gamma: T::from_f64(0.577_215_664_901_532_9),
            zeta_m: cfg.zeta_m,
            zeta_k,
            asymptotic_shift,
            quadrature: AdaptiveRule::new(quad_order),
            ln_int: Vec::new(),
        };
        sf.ln_int = (0..=1024).map(|n| if n == 0 { T::zero() } else { T::from_f64(n as f64).ln() }).collect();
        if extended {
            sf.euler_gamma = -sf.digamma_unchecked(&T::one());
        }
        sf
    }

    pub fn pi(&self) -> &T {
        &self.pi
    }

    pub fn euler_gamma(&self) -> &T {
        &self.euler_gamma
    }

    pub fn ln_2pi(&self) -> &T {
        &self.ln_2pi
    }

    pub fn bernoulli_table(&self) -> &BernoulliTable {
        &self.bernoulli
    }

    pub fn quadrature(&self) -> &AdaptiveRule<T> {
        &self.quadrature
    }

    /// `B_{2k}` at working precision.
    pub fn b2k(&self, k: usize) -> Result<&T> {
        self.b2k.get(k).ok_or(crate::Error::Capacity { index: 2 * k, capacity: 2 * (self.b2k.len() - 1) })
    }

    /// `ln n` for small positive integers, cached.
    pub fn ln_int(&self, n: usize) -> T {
        match self.ln_int.get(n) {
            Some(v) if n > 0 => v.clone(),
            _ => T::from_f64(n as f64).ln(),
        }
    }

    /// Pochhammer symbol `(a)_m = a (a+1) ... (a+m-1)`, `(a)_0 = 1`.
    pub fn pochhammer(&self, a: &Cx<T>, m: usize) -> Cx<T> {
        pochhammer(a, m)
    }

    /// Rational `q` times `pi^{2m}` at working precision.
    pub fn rational_times_pi_power(&self, q: &BigRational, two_m: u32) -> T {
        T::from_ratio(q) * self.pi.powi(two_m as i32)
    }

    pub fn is_extended(&self) -> bool {
        T::precision_bits() > 64
    }
}

/// Pochhammer symbol `(a)_m`.
pub fn pochhammer<T: Real>(a: &Cx<T>, m: usize) -> Cx<T> {
    let mut acc = Cx::new(T::one(), T::zero());
    for j in 0..m {
        acc = acc * (a.clone() + complex::real(T::from_f64(j as f64)));
    }
    acc
}

/// Shared double-precision instance.
pub fn f64_specfun() -> &'static SpecFun<f64> {
    static SHARED: OnceLock<SpecFun<f64>> = OnceLock::new();
    SHARED.get_or_init(|| SpecFun::new(&PrecisionConfig::default()))
}

pub fn gamma(z: num_complex::Complex64) -> Result<num_complex::Complex64> {
    f64_specfun().gamma(&z)
}

pub fn digamma(x: f64) -> Result<f64> {
    f64_specfun().digamma(&x)
}

pub fn zeta(s: num_complex::Complex64) -> Result<num_complex::Complex64> {
    f64_specfun().zeta(&s)
}
