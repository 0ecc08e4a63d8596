use std::sync::{Arc, OnceLock};

use crate::coeffs::AlphaTable;
use crate::config::PrecisionConfig;
use crate::error::Result;
use crate::real::Real;
use crate::specfun::SpecFun;

/// Precomputed tables at the working precision of `T`; every evaluator in
/// the crate is a method on this type.
#[derive(Debug, Clone)]
pub struct Engine<T: Real> {
    pub(crate) cfg: PrecisionConfig,
    pub(crate) sf: SpecFun<T>,
    pub(crate) alpha: Arc<AlphaTable>,
    /// `pi^{2n} q_{n,j}` at working precision.
    pub(crate) alpha_num: Vec<Vec<T>>,
}

impl<T: Real> Engine<T> {
    /// Validates `cfg` and builds the tables. For the extended backend the
    /// global working precision is set from `cfg` first.
    pub fn new(cfg: PrecisionConfig) -> Result<Self> {
        cfg.validate()?;
        cfg.apply();
        let sf = SpecFun::<T>::new(&cfg);
        let alpha = AlphaTable::shared();
        let pi2 = sf.pi.clone() * sf.pi.clone();
        let mut pi_pow = T::one();
        let mut alpha_num = Vec::with_capacity(alpha.n_max() + 1);
        for poly in alpha.polys() {
            alpha_num.push(poly.coeffs.iter().map(|c| T::from_ratio(c) * pi_pow.clone()).collect());
            pi_pow = pi_pow * pi2.clone();
        }
        Ok(Engine { cfg, sf, alpha, alpha_num })
    }

    pub fn config(&self) -> &PrecisionConfig {
        &self.cfg
    }

    pub fn specfun(&self) -> &SpecFun<T> {
        &self.sf
    }

    pub fn alpha_table(&self) -> &AlphaTable {
        &self.alpha
    }

    pub fn is_extended(&self) -> bool {
        self.sf.is_extended()
    }
}

impl Engine<f64> {
    /// Shared double-precision engine with the default configuration.
    pub fn shared() -> &'static Engine<f64> {
        static SHARED: OnceLock<Engine<f64>> = OnceLock::new();
        SHARED.get_or_init(|| Engine::new(PrecisionConfig::default()).expect("default configuration is valid"))
    }
}
