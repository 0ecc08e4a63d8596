use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{Case, VerificationReport};
use crate::coeffs::DIVERGENCE_N_MAX;
use crate::complex;
use crate::config::DOUBLE_DIGITS;
use crate::energy::circle_energy;
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::real::Real;
use crate::specfun::zeta_sign_real;

fn positive_even(s: f64) -> Option<usize> {
    (s > 0.0 && s == s.floor() && (s as i64) % 2 == 0).then(|| (s / 2.0) as usize)
}

/// Compares the sign of each `c_n(s)` with the sign of `zeta(s - 2n)`.
pub fn audit_signs<T: Real>(engine: &Engine<T>, s: f64, n_max: usize, digits: u32) -> Result<VerificationReport> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::Domain(format!("sign audit needs real s > 0, got {s}")));
    }
    if positive_even(s).is_some() {
        return Err(Error::Domain(format!("sign audit is undefined at the even integer s = {s}")));
    }
    let mut report = VerificationReport::new("signs", digits, None);
    let s_cx = complex::real(T::from_f64(s));
    for n in 0..=n_max {
        let shifted = s - 2.0 * n as f64;
        let id = format!("s{s}-n{n}");
        let inputs = json!({"s": s, "n": n});
        if shifted == 1.0 {
            report.push(Case::skipped(id, inputs, "exceptional index; the term is replaced by the logarithmic part"));
            continue;
        }
        let expected = zeta_sign_real(shifted);
        if expected == 0 {
            report.push(Case::skipped(id, inputs, format!("zeta({shifted}) = 0")));
            continue;
        }
        let c = engine.c_coefficient(n, &s_cx)?.value.re;
        let got = complex::signum(&c);
        report.push(Case::check(id, inputs, json!(expected), json!(got), got == expected).with_note(format!("c_n = {:e}", c.to_f64())));
    }
    Ok(report)
}

/// Growth of `|c_n(s)| N^{-2n}`: passes when the largest value over
/// `n in [40, 50]` exceeds `1e3` times the largest over `n in [0, 10]`.
/// At positive even `s` the expansion terminates instead, which is checked.
pub fn audit_divergence<T: Real>(engine: &Engine<T>, s: f64, big_n: u64, digits: u32) -> Result<VerificationReport> {
    let profile = engine.divergence_profile(&T::from_f64(s), big_n, DIVERGENCE_N_MAX)?;
    let mut report = VerificationReport::new("divergence", digits, None);
    let inputs = json!({"s": s, "N": big_n});
    if let Some(m) = positive_even(s) {
        let tail_zero = profile.iter().skip(m + 1).all(|v| matches!(v, Some(x) if x.is_zero()));
        report.push(
            Case::check(
                format!("s{s}-N{big_n}-terminating"),
                inputs,
                json!(format!("c_n = 0 for n > {m}")),
                json!(if tail_zero { "all zero" } else { "nonzero tail" }),
                tail_zero,
            )
            .with_note("terminating expansion; the series does not diverge"),
        );
        return Ok(report);
    }
    let max_over = |lo: usize, hi: usize| {
        profile[lo..=hi].iter().flatten().map(|v| v.to_f64()).fold(0.0, f64::max)
    };
    let head = max_over(0, 10);
    let tail = max_over(40, DIVERGENCE_N_MAX);
    let mut c = Case::check(
        format!("s{s}-N{big_n}"),
        inputs,
        json!({"threshold": 1e3 * head}),
        json!({"max_head": head, "max_tail": tail}),
        tail > 1e3 * head,
    );
    c.residual = tail / head;
    c.tolerance = 1e3;
    report.push(c);
    Ok(report)
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimalityOptions {
    pub trials: usize,
    /// Each angle moves by a uniform amount in `[-scale, scale]`.
    pub scale: f64,
    pub seed: u64,
}

impl Default for OptimalityOptions {
    fn default() -> Self {
        OptimalityOptions { trials: 1000, scale: 1e-3, seed: 0 }
    }
}

/// Energy with `floor(N/2)` points at `1` and the rest at `-1`.
pub fn clustered_energy(s: f64, big_n: u64) -> f64 {
    let a = (big_n / 2) as f64;
    let b = big_n as f64 - a;
    2.0 * a * b * 2f64.powf(-s)
}

/// Random perturbations of the roots of unity. For `s >= 0` the energy may
/// not decrease, for `-2 < s < 0` it may not increase. At `s = -2` every
/// configuration with centroid at the origin ties, so no strict check is
/// made; below `-2` the clustered configuration is compared instead.
pub fn audit_optimality(s: f64, big_n: u64, opts: &OptimalityOptions) -> Result<VerificationReport> {
    if big_n < 3 {
        return Err(Error::Domain(format!("optimality audit needs N >= 3, got {big_n}")));
    }
    if !(opts.scale > 0.0 && opts.scale <= 1e-2) {
        return Err(Error::Domain(format!("perturbation scale must lie in (0, 1e-2], got {}", opts.scale)));
    }
    if !s.is_finite() {
        return Err(Error::NonFinite("s".into()));
    }
    let mut report = VerificationReport::new("optimality", DOUBLE_DIGITS, Some(opts.seed));
    let angles: Vec<f64> =
        (0..big_n).map(|j| 2.0 * std::f64::consts::PI * j as f64 / big_n as f64).collect();
    let base = circle_energy(s, &angles);
    let inputs = json!({"s": s, "N": big_n, "trials": opts.trials, "scale": opts.scale});
    if s == -2.0 {
        report.push(Case::skipped(
            format!("perturb-s{s}-N{big_n}"),
            inputs,
            "every configuration with centroid at the origin has the same energy",
        ));
        return Ok(report);
    }
    if s < -2.0 {
        let clustered = clustered_energy(s, big_n);
        report.push(Case::check(
            format!("clustered-s{s}-N{big_n}"),
            json!({"s": s, "N": big_n}),
            json!({"roots_of_unity": base}),
            json!({"clustered": clustered}),
            clustered > base,
        ));
        if big_n == 4 && s == -3.0 {
            report.push(Case::absolute(
                "roots-of-unity-s-3-N4",
                json!({"s": s, "N": 4}),
                Complex64::new(54.6274, 0.0),
                Complex64::new(base, 0.0),
                1e-3,
            ));
        }
        return Ok(report);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(s.to_bits() ^ big_n);
    let slack = 64.0 * f64::EPSILON * base.abs();
    let mut violations = 0usize;
    let mut worst = 0.0f64;
    let mut moved = angles.clone();
    for _ in 0..opts.trials {
        for (m, a) in moved.iter_mut().zip(&angles) {
            *m = a + rng.gen_range(-opts.scale..=opts.scale);
        }
        let e = circle_energy(s, &moved);
        // positive when the energy moves the wrong way
        let wrong = if s >= 0.0 { base - e } else { e - base };
        if wrong > slack {
            violations += 1;
        }
        worst = worst.max(wrong);
    }
    let what = if s >= 0.0 { "decreases" } else { "increases" };
    let mut c = Case::check(
        format!("perturb-s{s}-N{big_n}"),
        inputs,
        json!({what: 0}),
        json!({what: violations}),
        violations == 0,
    )
    .with_note(format!("largest move in the wrong direction {worst:e}, slack {slack:e}"));
    c.residual = violations as f64;
    report.push(c);
    Ok(report)
}
