use crate::complex::{self, Cx};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::real::Real;
use crate::sum::{ComplexSum, Neumaier};

pub(crate) fn check_n(big_n: u64) -> Result<()> {
    if big_n < 2 {
        return Err(Error::Domain(format!("N must be at least 2, got {big_n}")));
    }
    Ok(())
}

pub(crate) fn check_not_log(s: &Cx<impl Real>) -> Result<()> {
    if complex::exact_integer(s) == Some(0) {
        return Err(Error::Domain("s = 0 is the logarithmic case; use the log evaluator".into()));
    }
    Ok(())
}

/// `prod_{k=1}^{N-1} sin(pi k / N)` next to its closed form `2^{1-N} N`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogProductCheck<T: Real> {
    pub product: T,
    pub expected: T,
}

impl<T: Real> Engine<T> {
    /// `2^{-s} N sum_{k=1}^{N-1} (sin(pi k / N))^{-s}`.
    ///
    /// Only `k <= N/2` is visited; the terms are symmetric about `N/2`.
    pub fn energy_direct(&self, s: &Cx<T>, big_n: u64) -> Result<Cx<T>> {
        check_n(big_n)?;
        complex::ensure_finite(s, "s")?;
        check_not_log(s)?;
        let neg_s = -s.clone();
        let nf = T::from_f64(big_n as f64);
        let mut acc = ComplexSum::default();
        for k in 1..=((big_n - 1) / 2) {
            let angle = self.sf.pi.clone() * T::from_f64(k as f64) / nf.clone();
            let term = complex::pow_real_base(&angle.sin().ln(), &neg_s);
            acc.add(term.clone() * T::from_f64(2.0));
        }
        if big_n % 2 == 0 {
            acc.add(complex::real(T::one()));
        }
        let two_pow = complex::pow_real_base(&T::from_f64(2.0).ln(), &neg_s);
        Ok(acc.value() * two_pow * nf)
    }

    /// `L_0(N) = -N ln N`.
    pub fn energy_log(&self, big_n: u64) -> Result<T> {
        check_n(big_n)?;
        let nf = T::from_f64(big_n as f64);
        Ok(-(nf.clone() * nf.ln()))
    }

    pub fn log_product_check(&self, big_n: u64) -> Result<LogProductCheck<T>> {
        check_n(big_n)?;
        let nf = T::from_f64(big_n as f64);
        let mut ln_sum = Neumaier::default();
        for k in 1..big_n {
            let angle = self.sf.pi.clone() * T::from_f64(k as f64) / nf.clone();
            ln_sum.add(angle.sin().ln());
        }
        let expected = T::from_f64(2.0).powi(1 - big_n as i32) * nf;
        Ok(LogProductCheck { product: ln_sum.value().exp(), expected })
    }

    /// `sum_{j != k} |z_j - z_k|^{-s}` over the N-th roots of unity, with the
    /// distances taken from the point coordinates.
    pub fn pairwise_energy(&self, s: &Cx<T>, big_n: u64) -> Result<Cx<T>> {
        check_n(big_n)?;
        complex::ensure_finite(s, "s")?;
        let pts = self.roots_of_unity(big_n);
        let neg_s = -s.clone();
        let mut acc = ComplexSum::default();
        for (j, a) in pts.iter().enumerate() {
            for (k, b) in pts.iter().enumerate() {
                if j != k {
                    let d = complex::abs(&(a.clone() - b.clone()));
                    acc.add(complex::pow_real_base(&d.ln(), &neg_s));
                }
            }
        }
        Ok(acc.value())
    }

    /// `sum_{j != k} ln(1 / |z_j - z_k|)` over the N-th roots of unity.
    pub fn pairwise_log_energy(&self, big_n: u64) -> Result<T> {
        check_n(big_n)?;
        let pts = self.roots_of_unity(big_n);
        let mut acc = Neumaier::default();
        for (j, a) in pts.iter().enumerate() {
            for (k, b) in pts.iter().enumerate() {
                if j != k {
                    acc.add(-complex::abs(&(a.clone() - b.clone())).ln());
                }
            }
        }
        Ok(acc.value())
    }

    fn roots_of_unity(&self, big_n: u64) -> Vec<Cx<T>> {
        let nf = T::from_f64(big_n as f64);
        let two_pi = self.sf.pi.clone() * T::from_f64(2.0);
        (0..big_n)
            .map(|j| {
                let t = two_pi.clone() * T::from_f64(j as f64) / nf.clone();
                Cx::new(t.cos(), t.sin())
            })
            .collect()
    }
}

/// Riesz `s`-energy `sum_{j != k} |z_j - z_k|^{-s}` of points `e^{i theta}`
/// on the unit circle for real `s`; `s = 0` gives the logarithmic energy.
pub fn circle_energy(s: f64, angles: &[f64]) -> f64 {
    let mut acc = Neumaier::default();
    for (j, a) in angles.iter().enumerate() {
        for b in &angles[j + 1..] {
            // |e^{ia} - e^{ib}| = 2 |sin((a - b) / 2)|
            let d = 2.0 * ((a - b) / 2.0).sin().abs();
            let v = if s == 0.0 { -d.ln() } else { d.powf(-s) };
            acc.add(2.0 * v);
        }
    }
    acc.value()
}
