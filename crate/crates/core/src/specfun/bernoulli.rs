//! Exact Bernoulli numbers and polynomials.

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::real::Real;

/// Default table capacity (largest index `2K`).
pub const DEFAULT_CAPACITY: usize = 64;

/// Capacity of the process-wide table used internally by the numeric kernels.
pub const SHARED_CAPACITY: usize = 200;

/// Exact Bernoulli numbers `B_0..=B_capacity` (with `B_1 = -1/2`).
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    numbers: Vec<BigRational>,
}

impl Default for BernoulliTable {
    fn default() -> Self {
        Self::new(DEFAULT_CAPACITY)
    }
}

impl BernoulliTable {
    /// Builds `B_0..=B_capacity` from `sum_{k<=n} C(n+1,k) B_k = 0`.
    pub fn new(capacity: usize) -> Self {
        let mut numbers: Vec<BigRational> = Vec::with_capacity(capacity + 1);
        numbers.push(BigRational::one());
        for n in 1..=capacity {
            if n > 1 && n % 2 == 1 {
                numbers.push(BigRational::zero());
                continue;
            }
            let mut acc = BigRational::zero();
            for (k, b) in numbers.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let c = binomial(BigInt::from(n + 1), BigInt::from(k));
                acc += b * BigRational::from_integer(c);
            }
            numbers.push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
        }
        BernoulliTable { numbers }
    }

    /// Process-wide table with [`SHARED_CAPACITY`].
    pub fn shared() -> Arc<BernoulliTable> {
        static SHARED: OnceLock<Arc<BernoulliTable>> = OnceLock::new();
        SHARED.get_or_init(|| Arc::new(BernoulliTable::new(SHARED_CAPACITY))).clone()
    }

    pub fn capacity(&self) -> usize {
        self.numbers.len() - 1
    }

    pub fn number(&self, k: usize) -> Result<&BigRational> {
        self.numbers.get(k).ok_or(Error::Capacity { index: k, capacity: self.capacity() })
    }

    /// Even-index numbers `B_0, B_2, ..., B_{2K}`.
    pub fn even_numbers(&self) -> impl Iterator<Item = &BigRational> {
        self.numbers.iter().step_by(2)
    }

    /// Coefficients of `B_n(x) = sum_k C(n,k) B_{n-k} x^k`, lowest degree first.
    ///
    /// Degrees up to `capacity + 1` are available since `B_{2K+1} = 0`.
    pub fn poly_coeffs(&self, n: usize) -> Result<Vec<BigRational>> {
        if n > self.capacity() + 1 {
            return Err(Error::Capacity { index: n, capacity: self.capacity() + 1 });
        }
        let mut row = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let b = match self.numbers.get(n - k) {
                Some(b) => b.clone(),
                None => BigRational::zero(),
            };
            let c = binomial(BigInt::from(n), BigInt::from(k));
            row.push(b * BigRational::from_integer(c));
        }
        Ok(row)
    }

    /// Exact `B_n(x)` at rational `x`.
    pub fn poly_exact(&self, n: usize, x: &BigRational) -> Result<BigRational> {
        let row = self.poly_coeffs(n)?;
        Ok(row.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c))
    }

    /// `B_n(x)` at working precision.
    pub fn poly<T: Real>(&self, n: usize, x: &T) -> Result<T> {
        let row = self.poly_coeffs(n)?;
        Ok(row.iter().rev().fold(T::zero(), |acc, c| acc * x.clone() + T::from_ratio(c)))
    }

    /// Periodic Bernoulli function `C_n(x) = B_n(x - floor(x))`.
    pub fn periodic<T: Real>(&self, n: usize, x: &T) -> Result<T> {
        let frac = x.clone() - x.floor();
        self.poly(n, &frac)
    }

    /// `(-1)^{k-1}` sign of `B_{2k}` for `k >= 1`.
    pub fn even_sign(&self, k: usize) -> Result<i32> {
        let b = self.number(2 * k)?;
        Ok(if b.is_positive() { 1 } else if b.is_negative() { -1 } else { 0 })
    }
}

/// Exact `B_k` from the shared table.
pub fn bernoulli_number(k: usize) -> Result<BigRational> {
    BernoulliTable::shared().number(k).cloned()
}

/// `B_n(x)` in double precision from the shared table.
pub fn bernoulli_poly(n: usize, x: f64) -> Result<f64> {
    BernoulliTable::shared().poly(n, &x)
}

/// `C_n(x)` in double precision from the shared table.
pub fn periodic_bernoulli(n: usize, x: f64) -> Result<f64> {
    BernoulliTable::shared().periodic(n, &x)
}
