//! Evaluators for `L_s(N)`: direct summation, the exact incomplete-zeta
//! series and the truncated asymptotic expansion.

mod asymptotic;
mod constants;
mod direct;
mod incomplete;
mod series;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

pub use asymptotic::{exact_even_rational, Expansion, ExpansionTerm, TermJson, NEAR_EXCEPTIONAL};
pub use constants::SeriesSum;
pub use direct::{circle_energy, LogProductCheck};
pub use incomplete::IncompleteZetaParams;
pub use series::SeriesOutcome;

use crate::complex::{self, Cx};
use crate::engine::Engine;
use crate::error::Result;
use crate::real::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Direct,
    Series,
    Asymptotic,
    Log,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Method::Direct => "direct",
            Method::Series => "series",
            Method::Asymptotic => "asymptotic",
            Method::Log => "log",
        };
        f.write_str(name)
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "direct" => Ok(Method::Direct),
            "series" => Ok(Method::Series),
            "asymptotic" => Ok(Method::Asymptotic),
            "log" => Ok(Method::Log),
            other => Err(format!("unknown method '{other}' (expected direct, series, asymptotic or log)")),
        }
    }
}

/// Serializable result of one energy evaluation.
#[derive(Debug, Clone, Serialize)]
pub struct EnergyResult {
    pub s: [f64; 2],
    #[serde(rename = "N")]
    pub n: u64,
    pub method: Method,
    pub p: usize,
    pub value: [f64; 2],
    /// Full-precision decimal rendering of `value`.
    pub value_text: [String; 2],
    pub terms: Vec<TermJson>,
    pub log_coefficient: Option<f64>,
    pub quadratic: Option<[f64; 2]>,
    pub remainder_order: Option<f64>,
    pub warning: Option<String>,
}

impl<T: Real> Engine<T> {
    /// Dispatches on `method`; `s = 0` always uses the logarithmic formula.
    pub fn evaluate(&self, method: Method, s: &Cx<T>, big_n: u64, p: usize, n_max: usize) -> Result<EnergyResult> {
        let mut result = EnergyResult {
            s: [s.re.to_f64(), s.im.to_f64()],
            n: big_n,
            method,
            p,
            value: [0.0, 0.0],
            value_text: [String::new(), String::new()],
            terms: Vec::new(),
            log_coefficient: None,
            quadratic: None,
            remainder_order: None,
            warning: None,
        };
        let value = match method {
            Method::Log => {
                if complex::exact_integer(s) != Some(0) {
                    return Err(crate::Error::Domain("the log method requires s = 0".into()));
                }
                complex::real(self.energy_log(big_n)?)
            }
            Method::Direct => self.energy_direct(s, big_n)?,
            Method::Series => {
                let out = self.energy_series(s, big_n, p, n_max)?;
                result.warning = out.warning;
                out.value
            }
            Method::Asymptotic => {
                let (v, exp) = self.energy_asymptotic(s, big_n, p)?;
                result.terms = exp.terms.iter().map(|t| t.to_json()).collect();
                result.log_coefficient = exp.log_coefficient.as_ref().map(|c| c.to_f64());
                result.quadratic = Some([exp.quadratic.re.to_f64(), exp.quadratic.im.to_f64()]);
                result.remainder_order = Some(exp.remainder_order);
                v
            }
        };
        result.value = [value.re.to_f64(), value.im.to_f64()];
        result.value_text = [value.re.to_string(), value.im.to_string()];
        Ok(result)
    }
}
