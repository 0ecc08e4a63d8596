use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;

use super::{Case, VerificationReport};
use crate::complex::{self, Cx};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::real::Real;

/// `N = 2^7, ..., 2^12`.
pub const DEFAULT_GRID: [u64; 6] = [128, 256, 512, 1024, 2048, 4096];

/// Slope tolerance for real `s`.
pub const SLOPE_TOLERANCE: f64 = 0.2;
/// Slope tolerance for non-real `s`.
pub const SLOPE_TOLERANCE_COMPLEX: f64 = 0.3;

/// Least-squares fit of `ln err` against `ln N`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeFitReport {
    pub s: [f64; 2],
    pub p: usize,
    #[serde(rename = "N_grid")]
    pub n_grid: Vec<u64>,
    pub errors: Vec<f64>,
    pub fitted_slope: Option<f64>,
    pub expected_slope: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// The expansion terminates and reproduces the energy exactly.
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl SlopeFitReport {
    /// `N,err,predicted_order` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("N,err,predicted_order\n");
        for (n, e) in self.n_grid.iter().zip(&self.errors) {
            out.push_str(&format!("{n},{e:e},{}\n", self.expected_slope));
        }
        out
    }
}

/// Slope of the least-squares line through `(x, y)`.
pub fn least_squares_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    if x.len() != y.len() || x.len() < 2 {
        return None;
    }
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    if sxx == 0.0 {
        None
    } else {
        Some(sxy / sxx)
    }
}

fn terminating(s: &Cx<impl Real>, p: usize) -> bool {
    match complex::exact_integer(s) {
        Some(k) if k > 0 && k % 2 == 0 => p >= (k / 2) as usize,
        Some(k) if k < 0 && k % 2 == 0 => true,
        _ => false,
    }
}

fn check_grid(grid: &[u64]) -> Result<()> {
    if grid.len() < 2 || grid.windows(2).any(|w| w[0] >= w[1]) || grid[0] < 2 {
        return Err(Error::Domain("the N grid must be strictly increasing, start at N >= 2 and hold two points".into()));
    }
    Ok(())
}

/// Fits the remainder exponent of the order-`p` expansion against the
/// direct sum. Run this on the extended backend: at `N = 4096` the
/// remainders for `p >= 2` fall far below double-precision resolution.
pub fn fit_error_order<T: Real>(engine: &Engine<T>, s: &Cx<T>, p: usize, grid: &[u64]) -> Result<SlopeFitReport> {
    Ok(fit_error_orders(engine, s, &[p], grid)?.remove(0))
}

/// Like [`fit_error_order`] for several orders, sharing the direct sums.
pub fn fit_error_orders<T: Real>(
    engine: &Engine<T>,
    s: &Cx<T>,
    orders: &[usize],
    grid: &[u64],
) -> Result<Vec<SlopeFitReport>> {
    check_grid(grid)?;
    let direct = grid.iter().map(|&n| engine.energy_direct(s, n)).collect::<Result<Vec<_>>>()?;
    let sf = [s.re.to_f64(), s.im.to_f64()];
    let tolerance = if sf[1] == 0.0 { SLOPE_TOLERANCE } else { SLOPE_TOLERANCE_COMPLEX };
    // the round-off floor relative to the energy itself
    let floor = T::epsilon().to_f64() * 1e4;
    let mut out = Vec::with_capacity(orders.len());
    for &p in orders {
        let expected_slope = -1.0 + sf[0] - 2.0 * p as f64;
        let mut errors = Vec::with_capacity(grid.len());
        let mut relative = Vec::with_capacity(grid.len());
        for (&n, d) in grid.iter().zip(&direct) {
            let approx = engine.energy_asymptotic(s, n, p)?.0;
            let err = complex::abs(&(approx - d.clone()));
            relative.push((err.clone() / complex::abs(d)).to_f64());
            errors.push(err.to_f64());
        }
        let mut report = SlopeFitReport {
            s: sf,
            p,
            n_grid: grid.to_vec(),
            errors: errors.clone(),
            fitted_slope: None,
            expected_slope,
            tolerance,
            pass: false,
            exact: false,
            note: None,
        };
        if terminating(s, p) {
            let worst = relative.iter().cloned().fold(0.0, f64::max);
            report.exact = true;
            report.pass = worst <= floor;
            report.note = Some(format!(
                "terminating expansion: no slope to fit; worst relative deviation {worst:e}"
            ));
            out.push(report);
            continue;
        }
        let (xs, ys): (Vec<f64>, Vec<f64>) = grid
            .iter()
            .zip(&errors)
            .filter(|(_, e)| **e > 0.0)
            .map(|(n, e)| ((*n as f64).ln(), e.ln()))
            .unzip();
        let dropped = grid.len() - xs.len();
        if dropped > 0 {
            report.note = Some(format!("{dropped} zero errors excluded from the fit"));
        }
        if let Some(w) = relative.iter().position(|r| *r < floor) {
            report.note = Some(format!(
                "error at N = {} is within the round-off floor; increase the precision",
                grid[w]
            ));
        }
        report.fitted_slope = least_squares_slope(&xs, &ys);
        report.pass = matches!(report.fitted_slope, Some(k) if (k - expected_slope).abs() <= tolerance);
        out.push(report);
    }
    Ok(out)
}

/// Checks at the first two odd integers.
///
/// At `s = 1` the energy minus its `N^2 log N` and `N^2` terms must approach
/// `c_1(1)`; at `s = 3`, removing the `N^4` term leaves `a N^2 log N + b N^2 + O(1)`,
/// and `a` is read off from `N` and `N/2` and compared with the log coefficient.
pub fn exceptional_checks<T: Real>(engine: &Engine<T>, big_n: u64, digits: u32) -> Result<VerificationReport> {
    if big_n < 4 || big_n % 2 == 1 {
        return Err(Error::Domain("exceptional checks need an even N >= 4".into()));
    }
    let mut report = VerificationReport::new("exceptional", digits, None);
    let sf = engine.specfun();
    let pi = sf.pi().clone();
    let gamma = sf.euler_gamma().clone();
    let one = complex::real(T::one());
    let n_at = |n: u64| T::from_f64(n as f64);

    let c1 = engine.c_coefficient(1, &one)?.value.re;
    let mut residuals = Vec::new();
    for n in [big_n / 10, big_n] {
        let nf = n_at(n);
        let n2 = nf.clone() * nf.clone();
        let lead = n2.clone() * nf.ln() / pi.clone();
        let quad = (gamma.clone() + (T::from_f64(2.0) / pi.clone()).ln()) / pi.clone() * n2;
        let r = engine.energy_direct(&one, n)?.re - lead - quad;
        residuals.push((n, r.to_f64()));
    }
    let (n_small, r_small) = residuals[0];
    let (_, r_big) = residuals[1];
    let c1f = c1.to_f64();
    report.push(
        Case::relative("s1-constant", json!({"s": 1, "N": big_n}), Complex64::new(c1f, 0.0), Complex64::new(r_big, 0.0), 1e-2)
            .with_note(format!(
                "residual {r_small:e} at N = {n_small}; distance to c_1 shrinks from {:e} to {:e}",
                (r_small - c1f).abs(),
                (r_big - c1f).abs()
            )),
    );
    report.push(Case::check(
        "s1-converges",
        json!({"s": 1, "N": [n_small, big_n]}),
        json!("|R(N) - c_1| decreasing"),
        json!([(r_small - c1f).abs(), (r_big - c1f).abs()]),
        (r_big - c1f).abs() < (r_small - c1f).abs(),
    ));

    let three = complex::real(T::from_f64(3.0));
    let c0 = engine.c_coefficient(0, &three)?.value.re;
    let stripped = |n: u64| -> Result<T> {
        let nf = n_at(n);
        let n2 = nf.clone() * nf.clone();
        let r = engine.energy_direct(&three, n)?.re - c0.clone() * n2.clone() * n2.clone();
        Ok(r / n2)
    };
    let slope = (stripped(big_n)? - stripped(big_n / 2)?) / T::from_f64(2.0).ln();
    let expected = T::one() / (T::from_f64(8.0) * pi);
    report.push(
        Case::relative(
            "s3-log-coefficient",
            json!({"s": 3, "N": [big_n / 2, big_n]}),
            Complex64::new(expected.to_f64(), 0.0),
            Complex64::new(slope.to_f64(), 0.0),
            5e-3,
        )
        .with_note("coefficient of N^2 log N after removing c_0 N^4"),
    );
    Ok(report)
}
