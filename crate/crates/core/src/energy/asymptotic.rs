use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::coeffs::{c_coefficient_even, format_cx, ALPHA_LIMIT};
use crate::complex::{self, Cx};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::real::Real;

use super::direct::{check_n, check_not_log};

/// Distance to an odd positive integer below which the general expansion is refused.
pub const NEAR_EXCEPTIONAL: f64 = 1e-9;

/// `c_n(s) N^{1+s-2n}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpansionTerm<T: Real> {
    pub n: usize,
    pub coefficient: Cx<T>,
    pub exponent: Cx<T>,
}

/// Truncated large-`N` expansion of `L_s(N)`.
///
/// `quadratic` multiplies `N^2` (it is `V_s` in the general case);
/// `log_coefficient` multiplies `N^2 log N` and is present exactly when `s`
/// is an odd positive integer.
#[derive(Debug, Clone, PartialEq)]
pub struct Expansion<T: Real> {
    pub s: Cx<T>,
    pub p: usize,
    pub log_coefficient: Option<T>,
    pub quadratic: Cx<T>,
    pub terms: Vec<ExpansionTerm<T>>,
    /// Real part of the exponent of the remainder, `-1 + Re s - 2p`.
    pub remainder_order: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TermJson {
    pub n: usize,
    pub coefficient: [f64; 2],
    pub exponent: [f64; 2],
}

impl<T: Real> ExpansionTerm<T> {
    pub fn to_json(&self) -> TermJson {
        TermJson {
            n: self.n,
            coefficient: [self.coefficient.re.to_f64(), self.coefficient.im.to_f64()],
            exponent: [self.exponent.re.to_f64(), self.exponent.im.to_f64()],
        }
    }
}

impl<T: Real> Expansion<T> {
    pub fn evaluate(&self, big_n: u64) -> Cx<T> {
        let nf = T::from_f64(big_n as f64);
        let ln_n = nf.ln();
        let n2 = nf.clone() * nf;
        let mut acc = self.quadratic.clone() * n2.clone();
        if let Some(c) = &self.log_coefficient {
            acc = acc + complex::real(c.clone() * n2 * ln_n.clone());
        }
        for t in &self.terms {
            if !complex::abs(&t.coefficient).is_zero() {
                acc = acc + t.coefficient.clone() * complex::pow_real_base(&ln_n, &t.exponent);
            }
        }
        acc
    }
}

fn odd_index(s: &Cx<impl Real>) -> Option<usize> {
    match complex::exact_integer(s) {
        Some(k) if k > 0 && k % 2 == 1 => Some(((k - 1) / 2) as usize),
        _ => None,
    }
}

fn positive_even_index(s: &Cx<impl Real>) -> Option<usize> {
    match complex::exact_integer(s) {
        Some(k) if k > 0 && k % 2 == 0 => Some((k / 2) as usize),
        _ => None,
    }
}

impl<T: Real> Engine<T> {
    /// Expansion of `L_s(N)` through `n = p`.
    pub fn expansion(&self, s: &Cx<T>, p: usize) -> Result<Expansion<T>> {
        complex::ensure_finite(s, "s")?;
        check_not_log(s)?;
        if p > ALPHA_LIMIT {
            return Err(Error::Capacity { index: p, capacity: ALPHA_LIMIT });
        }
        let exceptional = odd_index(s);
        if exceptional.is_none() && s.im.to_f64().abs() < NEAR_EXCEPTIONAL {
            let re = s.re.to_f64();
            let odd = (((re - 1.0) / 2.0).round() * 2.0 + 1.0) as i64;
            let distance = complex::abs(&(s.clone() - complex::real(T::from_f64(odd as f64)))).to_f64();
            if odd > 0 && distance < NEAR_EXCEPTIONAL {
                return Err(Error::NearExceptional { s: format_cx(s), odd, distance });
            }
        }
        let one = complex::real(T::one());
        let mut terms = Vec::with_capacity(p + 1);
        for n in 0..=p {
            if Some(n) == exceptional {
                continue;
            }
            let exponent = one.clone() + s.clone() - complex::real(T::from_f64((2 * n) as f64));
            let coefficient = self.c_coefficient(n, s)?.value;
            terms.push(ExpansionTerm { n, coefficient, exponent });
        }
        let (log_coefficient, quadratic) = match exceptional {
            Some(m) => {
                let c = self.log_coefficient(m);
                let q = self.g_constant(m)? + c.clone() * self.sf.euler_gamma.clone();
                (Some(c), complex::real(q))
            }
            None => (None, self.v_s(s)?),
        };
        let remainder_order = -1.0 + s.re.to_f64() - 2.0 * p as f64;
        Ok(Expansion { s: s.clone(), p, log_coefficient, quadratic, terms, remainder_order })
    }

    /// Truncated asymptotic value of `L_s(N)` and the expansion it came from.
    /// At positive even integers the sum is carried out in exact rational
    /// arithmetic (the expansion terminates there).
    pub fn energy_asymptotic(&self, s: &Cx<T>, big_n: u64, p: usize) -> Result<(Cx<T>, Expansion<T>)> {
        check_n(big_n)?;
        let expansion = self.expansion(s, p)?;
        let value = match positive_even_index(s) {
            Some(m) => complex::real(T::from_ratio(&exact_even_partial(m, big_n, p)?)),
            None => expansion.evaluate(big_n),
        };
        Ok((value, expansion))
    }

    /// `L_{2M}(N)` from the terminating expansion.
    pub fn exact_even(&self, s: &Cx<T>, big_n: u64) -> Result<Cx<T>> {
        check_n(big_n)?;
        let m = positive_even_index(s)
            .ok_or_else(|| Error::Domain(format!("exact formula needs a positive even integer s, got {}", format_cx(s))))?;
        Ok(complex::real(T::from_ratio(&exact_even_rational(m, big_n)?)))
    }
}

/// `sum_{n<=min(p,M)} c_n(2M) N^{1+2M-2n}` exactly.
fn exact_even_partial(big_m: usize, big_n: u64, p: usize) -> Result<BigRational> {
    let n = BigInt::from(big_n);
    let mut acc = BigRational::zero();
    for k in 0..=p.min(big_m) {
        let c = c_coefficient_even(k, big_m)?;
        acc += c * BigRational::from_integer(n.pow((1 + 2 * big_m - 2 * k) as u32));
    }
    Ok(acc)
}

/// `L_{2M}(N)` as an exact rational.
pub fn exact_even_rational(big_m: usize, big_n: u64) -> Result<BigRational> {
    if big_m == 0 {
        return Err(Error::Domain("exact formula needs M >= 1".into()));
    }
    exact_even_partial(big_m, big_n, big_m)
}
