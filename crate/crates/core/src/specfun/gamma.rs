
use super::SpecFun;
use crate::complex::{self, Cx};
use crate::error::{Error, Result};
use crate::real::Real;

/// Lanczos coefficients for `g = 607/128` with 15 terms.
const LANCZOS_G_HALF: f64 = 5.242_187_5;
const LANCZOS_C0: f64 = 0.999_999_999_999_997_092;
const LANCZOS: [f64; 14] = [
    57.156_235_665_862_923_5,
    -59.597_960_355_475_491_2,
    14.136_097_974_741_747_1,
    -0.491_913_816_097_620_199,
    0.339_946_499_848_118_887e-4,
    0.465_236_289_270_485_756e-4,
    -0.983_744_753_048_795_646e-4,
    0.158_088_703_224_912_494e-3,
    -0.210_264_441_724_104_883e-3,
    0.217_439_618_115_212_643e-3,
    -0.164_318_106_536_763_890e-3,
    0.844_182_239_838_527_433e-4,
    -0.261_908_384_015_814_087e-4,
    0.368_991_826_595_316_234e-5,
];
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

impl<T: Real> SpecFun<T> {
    /// `Gamma(z)`; the reflection formula is used for `Re z < 1/2`.
    pub fn gamma(&self, z: &Cx<T>) -> Result<Cx<T>> {
        complex::ensure_finite(z, "Gamma argument")?;
        if let Some(n) = complex::exact_integer(z) {
            if n <= 0 {
                return Err(Error::Pole { function: "Gamma", at: n.to_string() });
            }
        }
        let half = T::from_f64(0.5);
        if z.re < half {
            let one_minus = complex::real(T::one()) - z.clone();
            let pz = z.clone() * self.pi.clone();
            let denom = complex::sin(&pz) * self.gamma_right(&one_minus);
            return Ok(complex::real(self.pi.clone()) / denom);
        }
        Ok(self.gamma_right(z))
    }

    /// `1 / Gamma(z)`, zero at the poles.
    pub fn rgamma(&self, z: &Cx<T>) -> Result<Cx<T>> {
        if let Some(n) = complex::exact_integer(z) {
            if n <= 0 {
                return Ok(Cx::new(T::zero(), T::zero()));
            }
        }
        Ok(complex::real(T::one()) / self.gamma(z)?)
    }

    fn gamma_right(&self, z: &Cx<T>) -> Cx<T> {
        if self.is_extended() {
            self.gamma_stirling(z)
        } else {
            self.gamma_lanczos(z)
        }
    }

    fn gamma_lanczos(&self, z: &Cx<T>) -> Cx<T> {
        let t = z.clone() + complex::real(T::from_f64(LANCZOS_G_HALF));
        let mut ser = complex::real(T::from_f64(LANCZOS_C0));
        for (j, c) in LANCZOS.iter().enumerate() {
            let denom = z.clone() + complex::real(T::from_f64((j + 1) as f64));
            ser = ser + complex::real(T::from_f64(*c)) / denom;
        }
        let half = complex::real(T::from_f64(0.5));
        let log_part = (z.clone() + half) * complex::ln(&t) - t;
        let scale = ser * T::from_f64(SQRT_2PI) / z.clone();
        complex::exp(&log_part) * scale
    }

    /// Stirling series after shifting the argument to `Re z >= asymptotic_shift`.
    fn gamma_stirling(&self, z: &Cx<T>) -> Cx<T> {
        let shift = (self.asymptotic_shift - z.re.to_f64()).ceil().max(0.0) as usize;
        let mut w = z.clone();
        let mut prod = complex::real(T::one());
        for _ in 0..shift {
            prod = prod * w.clone();
            w = w + complex::real(T::one());
        }
        let half = complex::real(T::from_f64(0.5));
        let ln_w = complex::ln(&w);
        let mut acc = (w.clone() - half.clone()) * ln_w - w.clone() + half * self.ln_2pi.clone();
        let w2 = w.clone() * w.clone();
        let mut wpow = w.clone();
        let tol = T::epsilon();
        for k in 1..self.b2k.len() {
            let kk = T::from_f64((2 * k * (2 * k - 1)) as f64);
            let term = complex::real(self.b2k[k].clone() / kk) / wpow.clone();
            let done = complex::abs(&term) <= tol.clone() * complex::abs(&acc);
            acc = acc + term;
            if done {
                break;
            }
            wpow = wpow * w2.clone();
        }
        complex::exp(&acc) / prod
    }

    /// Digamma for real `x > 0`.
    pub fn digamma(&self, x: &T) -> Result<T> {
        if !x.is_finite() {
            return Err(Error::NonFinite("digamma argument".into()));
        }
        if *x <= T::zero() {
            return Err(Error::Domain(format!("digamma requires x > 0, got {}", x.to_f64())));
        }
        Ok(self.digamma_unchecked(x))
    }

    pub(crate) fn digamma_unchecked(&self, x: &T) -> T {
        let shift = (self.asymptotic_shift - x.to_f64()).ceil().max(0.0) as usize;
        let mut w = x.clone();
        let mut lead = T::zero();
        for _ in 0..shift {
            lead = lead - T::one() / w.clone();
            w = w + T::one();
        }
        let mut acc = w.ln() - T::one() / (T::from_f64(2.0) * w.clone());
        let w2 = w.clone() * w.clone();
        let mut wpow = w2.clone();
        let tol = T::epsilon();
        for k in 1..self.b2k.len() {
            let term = self.b2k[k].clone() / (T::from_f64((2 * k) as f64) * wpow.clone());
            let done = term.abs() <= tol.clone() * acc.abs();
            acc = acc - term;
            if done {
                break;
            }
            wpow = wpow * w2.clone();
        }
        lead + acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::PrecisionConfig;
    use crate::mp::Mp;
    use crate::specfun::f64_specfun;
    use num_complex::Complex64;
    use num_traits::Zero;

    const EULER: f64 = 0.577_215_664_901_532_9;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn gamma_classical_values() {
        let sf = f64_specfun();
        assert!(rel(sf.gamma(&Complex64::new(1.0, 0.0)).unwrap(), Complex64::new(1.0, 0.0)) < 1e-14);
        let half_pi = std::f64::consts::PI.sqrt() / 2.0;
        assert!(rel(sf.gamma(&Complex64::new(1.5, 0.0)).unwrap(), Complex64::new(half_pi, 0.0)) < 1e-14);
        assert!(rel(sf.gamma(&Complex64::new(10.0, 0.0)).unwrap(), Complex64::new(362880.0, 0.0)) < 1e-13);
        assert!(matches!(sf.gamma(&Complex64::new(0.0, 0.0)), Err(Error::Pole { .. })));
        assert!(matches!(sf.gamma(&Complex64::new(-3.0, 0.0)), Err(Error::Pole { .. })));
        // Gamma(-1/2) = -2 sqrt(pi)
        let v = sf.gamma(&Complex64::new(-0.5, 0.0)).unwrap();
        assert!(rel(v, Complex64::new(-2.0 * std::f64::consts::PI.sqrt(), 0.0)) < 1e-14);
    }

    #[test]
    fn lanczos_agrees_with_extended_stirling() {
        let sf = f64_specfun();
        let mp = SpecFun::<Mp>::new(&PrecisionConfig::default());
        for &(re, im) in &[(0.3, 0.0), (2.5, 1.0), (-3.7, 2.2), (7.1, -9.0), (0.5, 20.0), (30.5, 0.1)] {
            let a = sf.gamma(&Complex64::new(re, im)).unwrap();
            let b = mp.gamma(&complex::from_f64::<Mp>(re, im)).unwrap();
            let b = complex::to_f64(&b);
            assert!(rel(a, b) < 1e-13, "z = {re}+{im}i: {a} vs {b}");
        }
    }

    #[test]
    fn extended_gamma_half_integer() {
        let mp = SpecFun::<Mp>::new(&PrecisionConfig::default());
        let v = mp.gamma(&complex::from_f64::<Mp>(0.5, 0.0)).unwrap();
        let err = v.re - Mp::pi().sqrt();
        assert!(err.abs().to_f64() < 1e-70);
        assert!(v.im.is_zero());
    }

    #[test]
    fn digamma_values() {
        let sf = f64_specfun();
        assert!((sf.digamma(&1.0).unwrap() + EULER).abs() < 1e-15);
        let half = -EULER - 2.0 * std::f64::consts::LN_2;
        assert!((sf.digamma(&0.5).unwrap() - half).abs() < 1e-14);
        assert!((sf.digamma(&2.0).unwrap() - (1.0 - EULER)).abs() < 1e-15);
        assert!(matches!(sf.digamma(&0.0), Err(Error::Domain(_))));
        assert!(matches!(sf.digamma(&-1.5), Err(Error::Domain(_))));
    }

    #[test]
    fn extended_euler_constant() {
        let mp = SpecFun::<Mp>::new(&PrecisionConfig::default());
        let gamma = Mp::parse("0.57721566490153286060651209008240243104215933593992359880576723488486772677766467")
            .unwrap();
        assert!((mp.euler_gamma().clone() - gamma).abs().to_f64() < 1e-74);
    }
}
