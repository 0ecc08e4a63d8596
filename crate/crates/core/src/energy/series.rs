use crate::complex::{self, Cx};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::real::Real;

use super::direct::{check_n, check_not_log};
use super::IncompleteZetaParams;

/// Result of the exact series evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct SeriesOutcome<T: Real> {
    pub value: Cx<T>,
    /// Index of the last term added.
    pub last_index: usize,
    /// Magnitude of the last term added.
    pub last_term: T,
    /// Set when the stopping rule did not trigger within `n_max` terms.
    pub warning: Option<String>,
}

impl<T: Real> Engine<T> {
    /// `L_s(N)` from the convergent series in `alpha_n(s) zeta_{N/2,p}(s - 2n)`.
    ///
    /// For `s = 2M + 1` the `n = M` term is replaced by
    /// `c N^2 log N + (G_M + c Psi_{N/2,p}) N^2` with `c = 2^{1-s} alpha_M(s) / pi^s`.
    /// Summation stops once two consecutive terms fall below the configured
    /// tolerance relative to the running total; terms at which the incomplete
    /// zeta value is exact (`s - 2n` an integer in `[-2p, 0]`) are not counted.
    pub fn energy_series(&self, s: &Cx<T>, big_n: u64, p: usize, n_max: usize) -> Result<SeriesOutcome<T>> {
        check_n(big_n)?;
        complex::ensure_finite(s, "s")?;
        check_not_log(s)?;
        if n_max > self.alpha.n_max() {
            return Err(Error::Capacity { index: n_max, capacity: self.alpha.n_max() });
        }
        let params = IncompleteZetaParams::new(big_n as f64 / 2.0, p)?;
        let nf = T::from_f64(big_n as f64);
        let ln_n = nf.ln();
        let n2 = nf.clone() * nf.clone();
        let exceptional = match complex::exact_integer(s) {
            Some(k) if k > 0 && k % 2 == 1 => Some(((k - 1) / 2) as usize),
            _ => None,
        };
        let mut total = match exceptional {
            Some(m) => {
                let c = self.log_coefficient(m);
                let psi = self.psi_quantity(&params)?;
                let g = self.g_constant(m)?;
                complex::real(c.clone() * n2.clone() * ln_n.clone() + (g + c * psi) * n2.clone())
            }
            None => self.v_s(s)? * n2.clone(),
        };
        let prefactor = self.two_over_two_pi_pow(s);
        let tol = T::from_f64(self.cfg.tolerance);
        let mut small_run = 0;
        let mut last_index = 0;
        let mut last_term = T::zero();
        let mut converged = false;
        for n in 0..=n_max {
            if Some(n) == exceptional {
                continue;
            }
            let shifted = s.clone() - complex::real(T::from_f64((2 * n) as f64));
            let exponent = shifted.clone() + complex::real(T::one());
            let term = prefactor.clone()
                * self.alpha_eval(n, s)?
                * self.incomplete_zeta(&shifted, &params)?
                * complex::pow_real_base(&ln_n, &exponent);
            total = total + term.clone();
            last_index = n;
            last_term = complex::abs(&term);
            // at integers s - 2n in [-2p, 0] the incomplete zeta is exact, so
            // a vanishing term there says nothing about the tail
            let structural = matches!(complex::exact_integer(&shifted), Some(k) if k <= 0 && k >= -2 * p as i64);
            if structural {
                continue;
            }
            if last_term <= tol.clone() * complex::abs(&total) {
                small_run += 1;
                if small_run == 2 {
                    converged = true;
                    break;
                }
            } else {
                small_run = 0;
            }
        }
        let warning = if converged {
            None
        } else {
            Some(format!(
                "series not converged after {} terms; last term magnitude {:e}",
                n_max + 1,
                last_term.to_f64()
            ))
        };
        Ok(SeriesOutcome { value: total, last_index, last_term, warning })
    }
}

#[cfg(test)]
mod tests {
    use crate::engine::Engine;
    use num_complex::Complex64;

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn identity_examples() {
        let e = Engine::shared();
        for &(re, im, n, p, n_max, tol) in &[
            (2.0, 0.0, 6u64, 2usize, 30usize, 1e-10),
            (1.0, 0.0, 8, 3, 30, 1e-10),
            (-1.2, 0.7, 5, 2, 40, 1e-9),
            (3.0, 0.0, 11, 1, 40, 1e-10),
            (0.5, 0.0, 64, 0, 48, 1e-10),
        ] {
            let s = Complex64::new(re, im);
            let series = e.energy_series(&s, n, p, n_max).unwrap();
            let direct = e.energy_direct(&s, n).unwrap();
            assert!(series.warning.is_none(), "{:?}", series.warning);
            assert!(rel(series.value, direct) < tol, "s = {s}, N = {n}: {} vs {direct}", series.value);
        }
    }

    #[test]
    fn truncation_warning() {
        let e = Engine::shared();
        let out = e.energy_series(&Complex64::new(0.5, 0.0), 40, 2, 2).unwrap();
        assert!(out.warning.is_some());
        assert!(e.energy_series(&Complex64::new(0.0, 0.0), 10, 2, 10).is_err());
    }
}
