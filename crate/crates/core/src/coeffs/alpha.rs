//! Exact Taylor coefficients of `(sin(pi z) / (pi z))^{-s}` as polynomials in `s`.

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::zeta_even;

/// Largest index held by the shared table.
pub const ALPHA_LIMIT: usize = 64;

/// `alpha_n(s) = pi^{2n} sum_j q_{n,j} s^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaPolynomial {
    pub n: usize,
    /// `q_{n,0..=n}`, lowest degree first.
    pub coeffs: Vec<BigRational>,
}

#[derive(Debug, Serialize)]
pub struct AlphaJson {
    pub n: usize,
    pub pi_power: usize,
    pub rationals: Vec<String>,
}

impl AlphaPolynomial {
    pub fn pi_power(&self) -> u32 {
        (2 * self.n) as u32
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    /// Rational part of `alpha_n(s)` at rational `s`, i.e. `alpha_n(s) / pi^{2n}`.
    pub fn eval_exact(&self, s: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * s + c)
    }

    /// Rational part of `alpha_n'(s)`.
    pub fn derivative_exact(&self, s: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (j, c) in self.coeffs.iter().enumerate().skip(1).rev() {
            acc = acc * s + c * BigRational::from_integer(BigInt::from(j));
        }
        acc
    }

    pub fn all_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn to_json(&self) -> AlphaJson {
        AlphaJson { n: self.n, pi_power: 2 * self.n, rationals: self.coeffs.iter().map(|c| c.to_string()).collect() }
    }
}

/// Exact table `alpha_0..=alpha_{n_max}` built from the derivative recurrence
/// `alpha_n'(s) = sum_{m<n} alpha_m(s) zeta(2(n-m)) / (n-m)`, `alpha_n(0) = 0`.
#[derive(Debug, Clone)]
pub struct AlphaTable {
    polys: Vec<AlphaPolynomial>,
    /// `zeta(2j) / pi^{2j}` for `j = 1..`.
    zeta_ratios: Vec<BigRational>,
    /// Common denominator `D_n` and numerators `D_n q_{n,j}`.
    integer_rows: Vec<(BigInt, Vec<BigInt>)>,
}

impl AlphaTable {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max > ALPHA_LIMIT {
            return Err(Error::Capacity { index: n_max, capacity: ALPHA_LIMIT });
        }
        let mut zeta_ratios = vec![BigRational::zero()];
        for j in 1..=n_max {
            zeta_ratios.push(zeta_even(j)?.0);
        }
        // r_j / j
        let weights: Vec<BigRational> = zeta_ratios
            .iter()
            .enumerate()
            .map(|(j, r)| if j == 0 { BigRational::zero() } else { r / BigRational::from_integer(BigInt::from(j)) })
            .collect();
        let mut polys = vec![AlphaPolynomial { n: 0, coeffs: vec![BigRational::one()] }];
        for n in 1..=n_max {
            let mut coeffs = vec![BigRational::zero(); n + 1];
            for (i, slot) in coeffs.iter_mut().enumerate().skip(1) {
                // (i) q_{n,i} = sum_m w_{n-m} q_{m,i-1}
                let mut acc = BigRational::zero();
                for m in (i - 1)..n {
                    if let Some(q) = polys[m].coeffs.get(i - 1) {
                        if !q.is_zero() {
                            acc += &weights[n - m] * q;
                        }
                    }
                }
                *slot = acc / BigRational::from_integer(BigInt::from(i));
            }
            polys.push(AlphaPolynomial { n, coeffs });
        }
        let integer_rows = polys
            .iter()
            .map(|p| {
                let d = p.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
                let nums = p.coeffs.iter().map(|c| c.numer() * (&d / c.denom())).collect();
                (d, nums)
            })
            .collect();
        Ok(AlphaTable { polys, zeta_ratios, integer_rows })
    }

    /// Process-wide table up to [`ALPHA_LIMIT`].
    pub fn shared() -> Arc<AlphaTable> {
        static SHARED: OnceLock<Arc<AlphaTable>> = OnceLock::new();
        SHARED.get_or_init(|| Arc::new(AlphaTable::new(ALPHA_LIMIT).expect("limit is valid"))).clone()
    }

    pub fn n_max(&self) -> usize {
        self.polys.len() - 1
    }

    pub fn get(&self, n: usize) -> Result<&AlphaPolynomial> {
        self.polys.get(n).ok_or(Error::Capacity { index: n, capacity: self.n_max() })
    }

    pub fn polys(&self) -> &[AlphaPolynomial] {
        &self.polys
    }

    /// Exact `alpha_n(s) / pi^{2n}` at the Gaussian dyadic point
    /// `s = (re + i im) / 2^e`, returned as unreduced real and imaginary parts.
    pub fn eval_dyadic(&self, n: usize, re: &BigInt, im: &BigInt, e: u32) -> Result<(BigRational, BigRational)> {
        let (d, nums) = self.integer_rows.get(n).ok_or(Error::Capacity { index: n, capacity: self.n_max() })?;
        // sum_j P_j A^j 2^{e(n-j)} by Horner in A = re + i im
        let mut ar = nums[n].clone();
        let mut ai = BigInt::zero();
        for j in (0..n).rev() {
            let nr = &ar * re - &ai * im;
            let ni = &ar * im + &ai * re;
            ar = nr + (&nums[j] << (e as usize * (n - j)));
            ai = ni;
        }
        let den = d << (e as usize * n);
        Ok((BigRational::new_raw(ar, den.clone()), BigRational::new_raw(ai, den)))
    }

    /// `zeta(2j) / pi^{2j}`.
    pub fn zeta_ratio(&self, j: usize) -> &BigRational {
        &self.zeta_ratios[j]
    }

    /// Rational part of `alpha_M'(2M+1) = sum_{m<M} alpha_m(2M+1) zeta(2(M-m)) / (M-m)`
    /// (the full value carries `pi^{2M}`).
    pub fn derivative_at_odd(&self, big_m: usize) -> Result<BigRational> {
        self.get(big_m)?;
        let s = BigRational::from_integer(BigInt::from(2 * big_m + 1));
        let mut acc = BigRational::zero();
        for m in 0..big_m {
            let j = big_m - m;
            acc += self.polys[m].eval_exact(&s) * &self.zeta_ratios[j] / BigRational::from_integer(BigInt::from(j));
        }
        Ok(acc)
    }
}

/// Polynomials `alpha_0..=alpha_{n_max}` from the shared table.
pub fn alpha_table(n_max: usize) -> Result<Vec<AlphaPolynomial>> {
    if n_max > ALPHA_LIMIT {
        return Err(Error::Capacity { index: n_max, capacity: ALPHA_LIMIT });
    }
    Ok(AlphaTable::shared().polys[..=n_max].to_vec())
}

/// `(1/2)_M / M!` as an exact rational.
pub fn half_pochhammer_over_factorial(m: usize) -> BigRational {
    let mut acc = BigRational::one();
    for j in 0..m {
        acc = acc * BigRational::new(BigInt::from(2 * j + 1), BigInt::from(2 * (j + 1)));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn first_polynomials() {
        let t = AlphaTable::new(4).unwrap();
        assert_eq!(t.get(0).unwrap().coeffs, vec![q(1, 1)]);
        assert_eq!(t.get(1).unwrap().coeffs, vec![q(0, 1), q(1, 6)]);
        assert_eq!(t.get(2).unwrap().coeffs, vec![q(0, 1), q(1, 180), q(1, 72)]);
        assert_eq!(t.get(2).unwrap().eval_exact(&q(4, 1)), q(11, 45));
        assert!(t.get(5).is_err());
        assert!(AlphaTable::new(ALPHA_LIMIT + 1).is_err());
    }

    #[test]
    fn values_at_odd_integers() {
        let t = AlphaTable::shared();
        for m in 0..=10 {
            let s = q(2 * m as i64 + 1, 1);
            assert_eq!(t.get(m).unwrap().eval_exact(&s), half_pochhammer_over_factorial(m), "M = {m}");
        }
    }

    #[test]
    fn derivative_sum() {
        let t = AlphaTable::shared();
        assert!(t.derivative_at_odd(0).unwrap().is_zero());
        assert_eq!(t.derivative_at_odd(1).unwrap(), q(1, 6));
        assert_eq!(t.derivative_at_odd(2).unwrap(), q(1, 180) + q(5, 36));
        // the finite sum is the derivative of the polynomial itself
        for m in 0..=12 {
            let s = q(2 * m as i64 + 1, 1);
            assert_eq!(t.derivative_at_odd(m).unwrap(), t.get(m).unwrap().derivative_exact(&s));
        }
    }

    #[test]
    fn dyadic_evaluation_is_exact() {
        let t = AlphaTable::shared();
        // s = 3/4 - 5/2 i = (3 - 10 i) / 4
        let s_re = q(3, 4);
        let s_im = q(-5, 2);
        for n in [0usize, 1, 5, 17] {
            let (re, im) = t.eval_dyadic(n, &BigInt::from(3), &BigInt::from(-10), 2).unwrap();
            // exact complex Horner as the oracle
            let (mut er, mut ei) = (BigRational::zero(), BigRational::zero());
            for c in t.get(n).unwrap().coeffs.iter().rev() {
                let nr = &er * &s_re - &ei * &s_im + c;
                let ni = &er * &s_im + &ei * &s_re;
                er = nr;
                ei = ni;
            }
            assert_eq!(re.reduced(), er, "n = {n}");
            assert_eq!(im.reduced(), ei, "n = {n}");
        }
    }

    #[test]
    fn shape_and_signs() {
        let t = AlphaTable::shared();
        assert_eq!(t.n_max(), ALPHA_LIMIT);
        for p in t.polys().iter().take(21) {
            assert!(p.all_nonnegative(), "n = {}", p.n);
            if p.n > 0 {
                assert!(p.coeffs[0].is_zero());
                assert_eq!(p.degree(), p.n);
                assert!(p.coeffs[p.n].is_positive());
            }
        }
    }

    #[test]
    fn json_shape() {
        let j = serde_json::to_value(alpha_table(2).unwrap()[2].to_json()).unwrap();
        assert_eq!(j, serde_json::json!({"n": 2, "pi_power": 4, "rationals": ["0", "1/180", "1/72"]}));
    }
}
