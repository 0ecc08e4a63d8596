use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Digits carried by the double-precision backend.
pub const DOUBLE_DIGITS: u32 = 15;

/// Smallest precision accepted for the extended backend.
pub const MIN_EXTENDED_DIGITS: u32 = 50;

/// Numeric knobs shared by the evaluators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrecisionConfig {
    /// Requested decimal digits. Values above [`DOUBLE_DIGITS`] select the
    /// extended backend.
    pub digits: u32,
    /// Truncation order `p` of the Euler-Maclaurin remainder.
    pub p: usize,
    /// Nodes of the base Gauss-Legendre rule (the refinement uses twice as many).
    pub quadrature_order: usize,
    /// Default number of series terms.
    pub n_max: usize,
    /// Relative tolerance for series stopping rules and quadrature.
    pub tolerance: f64,
    /// Explicit terms in the Euler-Maclaurin zeta evaluation.
    pub zeta_m: usize,
    /// Bernoulli corrections in the Euler-Maclaurin zeta evaluation.
    pub zeta_k: usize,
    /// Largest Bernoulli index `2K` exposed through the public table.
    pub bernoulli_capacity: usize,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig {
            digits: DOUBLE_DIGITS,
            p: 2,
            quadrature_order: 16,
            n_max: 48,
            tolerance: 1e-15,
            zeta_m: 32,
            zeta_k: 16,
            bernoulli_capacity: crate::specfun::DEFAULT_CAPACITY,
        }
    }
}

impl PrecisionConfig {
    pub fn extended(digits: u32) -> Self {
        PrecisionConfig { digits, tolerance: 10f64.powi(-(digits as i32)), ..Self::default() }
    }

    pub fn is_extended(&self) -> bool {
        self.digits > DOUBLE_DIGITS
    }

    pub fn bits(&self) -> usize {
        if self.is_extended() {
            crate::mp::bits_for_digits(self.digits)
        } else {
            53
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.digits < DOUBLE_DIGITS {
            return Err(Error::Configuration(format!("precision must be at least {DOUBLE_DIGITS} digits")));
        }
        if self.is_extended() && self.digits < MIN_EXTENDED_DIGITS {
            return Err(Error::Configuration(format!(
                "extended precision needs at least {MIN_EXTENDED_DIGITS} digits, got {}",
                self.digits
            )));
        }
        if self.quadrature_order == 0 || self.zeta_m < 2 || self.zeta_k == 0 {
            return Err(Error::Configuration("quadrature order, zeta M and K must be positive".into()));
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::Configuration("tolerance must be positive".into()));
        }
        if 2 * self.p + 2 > crate::specfun::SHARED_CAPACITY {
            return Err(Error::Capacity { index: 2 * self.p + 2, capacity: crate::specfun::SHARED_CAPACITY });
        }
        Ok(())
    }

    /// Sets the global working precision of [`crate::Mp`] to match `digits`.
    pub fn apply(&self) {
        if self.is_extended() {
            crate::mp::set_precision_bits(self.bits());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_validate() {
        let cfg = PrecisionConfig::default();
        assert!(!cfg.is_extended());
        assert!(cfg.validate().is_ok());
        assert!(PrecisionConfig::extended(60).validate().is_ok());
        assert!(PrecisionConfig::extended(30).validate().is_err());
        assert!(PrecisionConfig { digits: 10, ..Default::default() }.validate().is_err());
        assert!(PrecisionConfig { p: 500, ..Default::default() }.validate().is_err());
    }
}
