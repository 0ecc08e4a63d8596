use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{Case, VerificationReport};
use crate::config::DOUBLE_DIGITS;
use crate::energy::exact_even_rational;
use crate::engine::Engine;
use crate::error::Result;

/// `(Re s, Im s, N, p)` for the series identity, covering every regime of `s`.
pub const IDENTITY_CASES: [(f64, f64, u64, usize); 30] = [
    // s < -2
    (-3.5, 0.0, 17, 2),
    (-5.0, 0.0, 40, 1),
    (-2.6, 0.0, 123, 3),
    // s = -2
    (-2.0, 0.0, 9, 1),
    (-2.0, 0.0, 64, 3),
    // -2 < s < 0
    (-1.2, 0.0, 25, 2),
    (-0.5, 0.0, 200, 0),
    (-1.9, 0.0, 7, 4),
    // 0 < s < 1
    (0.5, 0.0, 33, 2),
    (0.25, 0.0, 150, 1),
    (0.9, 0.0, 12, 3),
    // s = 1
    (1.0, 0.0, 8, 3),
    (1.0, 0.0, 101, 1),
    // 1 < s, not an integer
    (1.5, 0.0, 60, 2),
    (2.5, 0.0, 19, 0),
    (4.3, 0.0, 77, 3),
    (7.7, 0.0, 30, 2),
    // even integers
    (2.0, 0.0, 6, 2),
    (4.0, 0.0, 45, 1),
    (6.0, 0.0, 128, 3),
    // odd integers >= 3
    (3.0, 0.0, 11, 1),
    (3.0, 0.0, 90, 3),
    (5.0, 0.0, 36, 2),
    (7.0, 0.0, 14, 4),
    // complex
    (0.5, 1.3, 50, 2),
    (-1.2, 0.7, 5, 2),
    (2.5, -2.0, 31, 1),
    (3.0, 1.0, 100, 3),
    (-3.0, 2.5, 22, 2),
    (1.0, -0.5, 180, 0),
];

#[derive(Debug, Clone, PartialEq)]
pub struct IdentityOptions {
    pub seed: u64,
    /// Series identity tolerance (relative).
    pub series: f64,
    /// Closed forms and pairwise sums (relative).
    pub exact: f64,
    /// Logarithmic energy (relative).
    pub log: f64,
    /// Agreement of the three forms of `V_s` (relative).
    pub v_s: f64,
    /// Largest `N` of the closed-form grids.
    pub n_grid_max: u64,
    /// Terms of the series evaluation.
    pub n_max: usize,
}

impl Default for IdentityOptions {
    fn default() -> Self {
        IdentityOptions { seed: 0, series: 1e-9, exact: 1e-12, log: 1e-10, v_s: 1e-9, n_grid_max: 2000, n_max: 48 }
    }
}

fn rel_residual(got: f64, expected: f64) -> f64 {
    if expected == 0.0 {
        got.abs()
    } else {
        ((got - expected) / expected).abs()
    }
}

/// Worst relative residual of `f(N)` against `oracle(N)` on `n_min..=n_max`.
fn grid_case(
    id: &str,
    inputs: serde_json::Value,
    n_min: u64,
    n_max: u64,
    tol: f64,
    mut f: impl FnMut(u64) -> Result<(f64, f64)>,
) -> Result<Case> {
    let mut worst = (0.0f64, n_min, 0.0, 0.0);
    for n in n_min..=n_max {
        let (got, expected) = f(n)?;
        let r = rel_residual(got, expected);
        if r > worst.0 || n == n_min {
            worst = (r.max(worst.0), n, got, expected);
        }
    }
    let (_, n, got, expected) = worst;
    Ok(Case::relative(id, inputs, Complex64::new(expected, 0.0), Complex64::new(got, 0.0), tol)
        .with_note(format!("worst case over N = {n_min}..={n_max} at N = {n}")))
}

fn ratio_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Cross-method identities: closed forms, the series identity, the
/// terminating even-`s` expansions, pairwise sums and the forms of `V_s`.
pub fn run_identity_suite(engine: &Engine<f64>, opts: &IdentityOptions) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("identity", DOUBLE_DIGITS, Some(opts.seed));
    let nmax = opts.n_grid_max;
    let s2 = Complex64::new(2.0, 0.0);
    let s4 = Complex64::new(4.0, 0.0);

    report.push(grid_case("quadratic-direct", json!({"s": 2, "N": [2, nmax]}), 2, nmax, opts.exact, |n| {
        let nf = n as f64;
        Ok((engine.energy_direct(&s2, n)?.re, nf * (nf * nf - 1.0) / 12.0))
    })?);
    let mut exact_ok = true;
    let mut first_bad = None;
    for n in 2..=nmax {
        let got = engine.energy_asymptotic(&s2, n, 1)?.0.re;
        let expected = ratio_f64(&BigRational::new(BigInt::from(n) * (BigInt::from(n).pow(2) - 1), BigInt::from(12)));
        if got != expected {
            exact_ok = false;
            first_bad.get_or_insert((n, got, expected));
        }
    }
    let (n, got, expected) = first_bad.unwrap_or((nmax, 0.0, 0.0));
    let mut c = Case::check(
        "quadratic-asymptotic",
        json!({"s": 2, "p": 1, "N": [2, nmax]}),
        json!("N (N^2 - 1) / 12 exactly"),
        if exact_ok { json!("equal for every N") } else { json!({"N": n, "got": got, "expected": expected}) },
        exact_ok,
    );
    c.mode = super::Mode::Exact;
    report.push(c);

    let quartic = |n: u64| {
        let b = BigInt::from(n);
        BigRational::new(&b * (b.pow(2) - 1) * (b.pow(2) + 11), BigInt::from(720))
    };
    let mut exact_ok = true;
    for n in 2..=nmax {
        exact_ok &= engine.energy_asymptotic(&s4, n, 2)?.0.re == ratio_f64(&quartic(n));
    }
    let mut c = Case::check(
        "quartic-asymptotic",
        json!({"s": 4, "p": 2, "N": [2, nmax]}),
        json!("N (N^2 - 1)(N^2 + 11) / 720 exactly"),
        json!(if exact_ok { "equal for every N" } else { "mismatch" }),
        exact_ok,
    );
    c.mode = super::Mode::Exact;
    report.push(c);
    report.push(grid_case("quartic-direct", json!({"s": 4, "N": [2, nmax]}), 2, nmax, opts.exact, |n| {
        Ok((engine.energy_direct(&s4, n)?.re, ratio_f64(&quartic(n))))
    })?);

    // V_{-2M} N^2 holds for N > M; at N <= M the power sum of sin^{2M} picks
    // up extra terms (L_{-4}(2) = 32, not 24)
    for (m, v) in [(1i32, 2.0), (2, 6.0)] {
        let s = Complex64::new(-2.0 * m as f64, 0.0);
        let n_min = m as u64 + 1;
        report.push(grid_case(
            &format!("negative-even-direct-s{}", -2 * m),
            json!({"s": -2 * m, "N": [n_min, nmax]}),
            n_min,
            nmax,
            opts.exact,
            |n| Ok((engine.energy_direct(&s, n)?.re, v * (n * n) as f64)),
        )?);
    }
    for n in [3u64, 10, 57, 200] {
        let s = Complex64::new(-4.0, 0.0);
        let got = engine.pairwise_energy(&s, n)?;
        report.push(Case::relative(
            format!("negative-even-pairwise-s-4-N{n}"),
            json!({"s": -4, "N": n}),
            Complex64::new(6.0 * (n * n) as f64, 0.0),
            got,
            opts.exact,
        ));
    }

    for n in [2u64, 3, 10, 100, 500, 1000, nmax] {
        let got = engine.pairwise_log_energy(n)?;
        let expected = -(n as f64) * (n as f64).ln();
        report.push(Case::relative(
            format!("log-pairwise-N{n}"),
            json!({"s": 0, "N": n}),
            Complex64::new(expected, 0.0),
            Complex64::new(got, 0.0),
            opts.log,
        ));
    }
    for n in [6u64, 25, 300] {
        let c = engine.log_product_check(n)?;
        report.push(Case::relative(
            format!("log-product-N{n}"),
            json!({"N": n}),
            Complex64::new(c.expected, 0.0),
            Complex64::new(c.product, 0.0),
            opts.log,
        ));
    }

    for &(re, im, n, p) in IDENTITY_CASES.iter() {
        let s = Complex64::new(re, im);
        let out = engine.energy_series(&s, n, p, opts.n_max)?;
        let direct = engine.energy_direct(&s, n)?;
        let mut c = Case::relative(
            format!("series-s{re}{}{im}i-N{n}-p{p}", if im < 0.0 { "" } else { "+" }),
            json!({"s": [re, im], "N": n, "p": p, "n_max": opts.n_max}),
            direct,
            out.value,
            opts.series,
        );
        if let Some(w) = out.warning {
            c = c.with_note(w);
        }
        report.push(c);
    }

    for m in 1..=3usize {
        let s = Complex64::new(2.0 * m as f64, 0.0);
        for n in [10u64, 1000, 100_000] {
            let asym = engine.energy_asymptotic(&s, n, m)?.0;
            let exact = ratio_f64(&exact_even_rational(m, n)?);
            let direct = engine.energy_direct(&s, n)?;
            report.push(
                Case::relative(
                    format!("terminating-s{}-N{n}", 2 * m),
                    json!({"s": 2 * m, "N": n, "p": m}),
                    direct,
                    asym,
                    opts.exact,
                )
                .with_note(format!("closed form {exact:e}")),
            );
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    rng.set_stream(1);
    for i in 0..6 {
        let s = Complex64::new(rng.gen_range(-4.0..5.0), if i % 2 == 0 { 0.0 } else { rng.gen_range(-2.0..2.0) });
        let n = rng.gen_range(2..=200u64);
        let got = engine.energy_direct(&s, n)?;
        let pair = engine.pairwise_energy(&s, n)?;
        report.push(Case::relative(
            format!("pairwise-{i}"),
            json!({"s": [s.re, s.im], "N": n}),
            pair,
            got,
            opts.exact,
        ));
    }

    rng.set_stream(2);
    let mut count = 0;
    while count < 50 {
        let s = Complex64::new(rng.gen_range(-6.0..6.0), if count % 3 == 0 { 0.0 } else { rng.gen_range(-3.0..3.0) });
        // keep clear of the poles of the three forms
        if s.im == 0.0 && (s.re - s.re.round()).abs() < 0.05 {
            continue;
        }
        let a = engine.v_s(&s)?;
        let b = engine.v_s_series(&s, 60)?.value;
        let c = engine.v_s_alt(&s)?;
        let worst = ((a - b).norm() / a.norm()).max((a - c).norm() / a.norm());
        let mut case = Case::relative(format!("v-forms-{count}"), json!({"s": [s.re, s.im]}), a, b, opts.v_s);
        case.residual = worst;
        case.pass = worst <= opts.v_s;
        case.note = Some(format!("tangent form {}", super::cx_json(c)));
        report.push(case);
        count += 1;
    }
    Ok(report)
}
