//! Riesz s-energy of the N-th roots of unity.

pub mod coeffs;
pub mod complex;
pub mod config;
pub mod energy;
pub mod engine;
pub mod error;
pub mod mp;
pub mod real;
pub mod specfun;
pub mod sum;
pub mod verify;

pub use config::PrecisionConfig;
pub use engine::Engine;
pub use error::{Error, Result};
pub use mp::Mp;
pub use real::Real;
