use num_complex::Complex64;
use serde::Serialize;
use serde_json::json;
use riesz_core::coeffs::{c_coefficient_even, ALPHA_LIMIT};
use riesz_core::complex::{self, Cx};
use riesz_core::energy::{EnergyResult, Method};
use riesz_core::verify::VerificationReport;
use riesz_core::{Engine, Error, Mp, PrecisionConfig, Real};

use crate::suite::ORDER_DIGITS;
use crate::{precision_config, CliResult, Format, GlobalArgs};

const DEFAULT_P: usize = 2;
const DEFAULT_SERIES_TERMS: usize = 48;

#[derive(Serialize)]
struct EnergyPayload {
    #[serde(flatten)]
    result: EnergyResult,
    precision_digits: u32,
}

fn show_cx(re: f64, im: f64) -> String {
    if im == 0.0 {
        format!("{re}")
    } else if im < 0.0 {
        format!("{re}{im}i")
    } else {
        format!("{re}+{im}i")
    }
}

fn to_json(v: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("payload serializes");
    s.push('\n');
    s
}

pub(crate) fn energy(g: &GlobalArgs, s: Complex64, n: u64, method: Method) -> CliResult<String> {
    let p = g.p.unwrap_or(DEFAULT_P);
    let n_max = g.n_max.unwrap_or(DEFAULT_SERIES_TERMS);
    let (result, digits) = match precision_config(g.precision)? {
        Some(cfg) => {
            let digits = cfg.digits;
            let e = Engine::<Mp>::new(cfg)?;
            (e.evaluate(method, &complex::from_f64(s.re, s.im), n, p, n_max)?, digits)
        }
        None => (Engine::shared().evaluate(method, &s, n, p, n_max)?, g.precision),
    };
    if let Some(w) = &result.warning {
        eprintln!("warning: {w}");
    }
    Ok(match g.format.unwrap_or(Format::Json) {
        Format::Json => to_json(&EnergyPayload { result, precision_digits: digits }),
        Format::Csv => format!(
            "s_re,s_im,N,method,p,value_re,value_im\n{},{},{},{},{},{},{}\n",
            result.s[0], result.s[1], result.n, result.method, result.p, result.value[0], result.value[1]
        ),
        Format::Text => energy_text(&result),
    })
}

fn energy_text(r: &EnergyResult) -> String {
    let mut out = format!(
        "L_s(N) for s = {}, N = {} ({})\nvalue = {}\n",
        show_cx(r.s[0], r.s[1]),
        r.n,
        r.method,
        show_cx(r.value[0], r.value[1])
    );
    if r.method == Method::Asymptotic {
        if let Some(c) = r.log_coefficient {
            out.push_str(&format!("  N^2 log N  coefficient {c}\n"));
        }
        if let Some(q) = r.quadratic {
            out.push_str(&format!("  N^2        coefficient {}\n", show_cx(q[0], q[1])));
        }
        for t in &r.terms {
            out.push_str(&format!(
                "  n = {:<2}     c_n = {}  N^({})\n",
                t.n,
                show_cx(t.coefficient[0], t.coefficient[1]),
                show_cx(t.exponent[0], t.exponent[1])
            ));
        }
        if let Some(o) = r.remainder_order {
            out.push_str(&format!("  remainder  O(N^{o})\n"));
        }
    }
    out
}

#[derive(Serialize)]
struct CoeffEntry {
    n: usize,
    value: Option<[f64; 2]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<String>,
    sign_hint: Option<i32>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    exceptional: bool,
}

#[derive(Serialize)]
struct CoeffPayload {
    s: [f64; 2],
    n_max: usize,
    coefficients: Vec<CoeffEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    log_coefficient: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    g_constant: Option<f64>,
}

pub(crate) fn coeffs(g: &GlobalArgs, s: Option<Complex64>, exceptional: bool) -> CliResult<String> {
    let n_max = g.n_max.unwrap_or(10);
    if n_max > ALPHA_LIMIT {
        return Err(Error::Capacity { index: n_max, capacity: ALPHA_LIMIT }.into());
    }
    let format = g.format.unwrap_or(Format::Json);
    let Some(s) = s else {
        let rows = Engine::shared().alpha_json(n_max)?;
        return Ok(match format {
            Format::Json => to_json(&json!({ "n_max": n_max, "alpha": rows })),
            Format::Csv => {
                let mut out = String::from("n,j,q\n");
                for r in &rows {
                    for (j, q) in r.rationals.iter().enumerate() {
                        out.push_str(&format!("{},{j},{q}\n", r.n));
                    }
                }
                out
            }
            Format::Text => {
                let mut out = String::from("alpha_n(s) = pi^(2n) sum_j q_(n,j) s^j\n");
                for r in &rows {
                    for (j, q) in r.rationals.iter().enumerate() {
                        if q != "0" {
                            out.push_str(&format!("q_({},{j}) = {q}\n", r.n));
                        }
                    }
                }
                out
            }
        });
    };
    let payload = match precision_config(g.precision)? {
        Some(cfg) => coeff_values(&Engine::<Mp>::new(cfg)?, s, n_max, exceptional)?,
        None => coeff_values(Engine::shared(), s, n_max, exceptional)?,
    };
    Ok(match format {
        Format::Json => to_json(&payload),
        Format::Csv => {
            let mut out = String::from("n,value_re,value_im,exact\n");
            for c in &payload.coefficients {
                let (re, im) = c.value.map_or((String::new(), String::new()), |v| (v[0].to_string(), v[1].to_string()));
                out.push_str(&format!("{},{re},{im},{}\n", c.n, c.exact.clone().unwrap_or_default()));
            }
            out
        }
        Format::Text => {
            let mut out = format!("c_n(s) for s = {}\n", show_cx(payload.s[0], payload.s[1]));
            for c in &payload.coefficients {
                match (&c.value, &c.exact) {
                    (_, Some(q)) => out.push_str(&format!("c_{} = {q}\n", c.n)),
                    (Some(v), None) => out.push_str(&format!("c_{} = {}\n", c.n, show_cx(v[0], v[1]))),
                    (None, None) => out.push_str(&format!("c_{} : replaced by the N^2 log N term\n", c.n)),
                }
            }
            if let (Some(l), Some(gm)) = (payload.log_coefficient, payload.g_constant) {
                out.push_str(&format!("log coefficient = {l}\nG = {gm}\n"));
            }
            out
        }
    })
}

fn coeff_values<T: Real>(engine: &Engine<T>, s: Complex64, n_max: usize, exceptional: bool) -> CliResult<CoeffPayload> {
    let z: Cx<T> = complex::from_f64(s.re, s.im);
    let even = match complex::exact_integer(&z) {
        Some(k) if k > 0 && k % 2 == 0 => Some((k / 2) as usize),
        _ => None,
    };
    let mut payload = CoeffPayload { s: [s.re, s.im], n_max, coefficients: Vec::new(), log_coefficient: None, g_constant: None };
    for n in 0..=n_max {
        match engine.c_coefficient(n, &z) {
            Ok(c) => {
                let exact = even.map(|m| c_coefficient_even(n, m)).transpose()?.map(|q| q.to_string());
                let j = c.to_json();
                payload.coefficients.push(CoeffEntry { n, value: Some(j.value), exact, sign_hint: j.sign_hint, exceptional: false });
            }
            Err(Error::ExceptionalIndex { .. }) if exceptional => {
                payload.coefficients.push(CoeffEntry { n, value: None, exact: None, sign_hint: None, exceptional: true });
                payload.log_coefficient = Some(engine.log_coefficient(n).to_f64());
                payload.g_constant = Some(engine.g_constant(n)?.to_f64());
            }
            Err(e) => return Err(e.into()),
        }
    }
    Ok(payload)
}

#[derive(Serialize)]
struct TableRow {
    s: [f64; 2],
    #[serde(rename = "N")]
    n: u64,
    p: usize,
    direct: [f64; 2],
    asymptotic: [f64; 2],
    err: f64,
    rel_err: f64,
}

/// Always evaluated on the extended backend, so that the error column
/// resolves remainders far below double precision. Errors below the
/// accumulated round-off of the direct sum are reported as exactly zero.
pub(crate) fn table(g: &GlobalArgs, s_list: &[Complex64], n_list: &[u64]) -> CliResult<String> {
    let p = g.p.unwrap_or(DEFAULT_P);
    let cfg = precision_config(g.precision)?.unwrap_or_else(|| PrecisionConfig::extended(ORDER_DIGITS));
    let engine = Engine::<Mp>::new(cfg)?;
    let eps = Mp::epsilon();
    let mut rows = Vec::new();
    for s in s_list {
        let z = complex::from_f64::<Mp>(s.re, s.im);
        for &n in n_list {
            let direct = engine.energy_direct(&z, n)?;
            let approx = engine.energy_asymptotic(&z, n, p)?.0;
            let scale = complex::abs(&direct);
            let mut err = complex::abs(&(approx.clone() - direct.clone()));
            if err <= eps.clone() * Mp::from_f64(16.0 * n as f64) * scale.clone() {
                err = Mp::from_f64(0.0);
            }
            let rel = err.clone() / scale;
            rows.push(TableRow {
                s: [s.re, s.im],
                n,
                p,
                direct: [direct.re.to_f64(), direct.im.to_f64()],
                asymptotic: [approx.re.to_f64(), approx.im.to_f64()],
                err: err.to_f64(),
                rel_err: rel.to_f64(),
            });
        }
    }
    Ok(match g.format.unwrap_or(Format::Csv) {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut out = String::from("s_re,s_im,N,p,direct_re,direct_im,asymptotic_re,asymptotic_im,err,rel_err\n");
            for r in &rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{},{:e},{:e}\n",
                    r.s[0], r.s[1], r.n, r.p, r.direct[0], r.direct[1], r.asymptotic[0], r.asymptotic[1], r.err, r.rel_err
                ));
            }
            out
        }
        Format::Text => {
            let mut out = format!("{:>12} {:>7} {:>3} {:>24} {:>24} {:>12}\n", "s", "N", "p", "direct", "asymptotic", "err");
            for r in &rows {
                out.push_str(&format!(
                    "{:>12} {:>7} {:>3} {:>24} {:>24} {:>12.3e}\n",
                    show_cx(r.s[0], r.s[1]),
                    r.n,
                    r.p,
                    show_cx(r.direct[0], r.direct[1]),
                    show_cx(r.asymptotic[0], r.asymptotic[1]),
                    r.err
                ));
            }
            out
        }
    })
}

pub(crate) fn render_report(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = report.to_json_pretty();
            s.push('\n');
            s
        }
        Format::Csv => {
            if report.fits.len() == 1 && report.cases.is_empty() {
                return report.fits[0].to_csv();
            }
            if !report.fits.is_empty() {
                let mut out = String::from("s_re,s_im,p,N,err,predicted_order\n");
                for f in &report.fits {
                    for (n, e) in f.n_grid.iter().zip(&f.errors) {
                        out.push_str(&format!("{},{},{},{n},{e:e},{}\n", f.s[0], f.s[1], f.p, f.expected_slope));
                    }
                }
                return out;
            }
            let mut out = String::from("id,mode,residual,tolerance,pass\n");
            for c in &report.cases {
                let mode = serde_json::to_value(c.mode).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
                out.push_str(&format!("{},{mode},{:e},{:e},{}\n", c.id, c.residual, c.tolerance, c.pass));
            }
            out
        }
        Format::Text => {
            let mut out = format!("suite {}\n", report.suite);
            for c in &report.cases {
                out.push_str(&format!("{} {} residual {:e}\n", if c.pass { "PASS" } else { "FAIL" }, c.id, c.residual));
            }
            for f in &report.fits {
                let slope = f.fitted_slope.map_or("exact".to_string(), |k| format!("{k:.4}"));
                out.push_str(&format!(
                    "{} fit s = {} p = {}: slope {slope}, expected {}\n",
                    if f.pass { "PASS" } else { "FAIL" },
                    show_cx(f.s[0], f.s[1]),
                    f.p,
                    f.expected_slope
                ));
            }
            let sm = &report.summary;
            out.push_str(&format!("{} passed, {} failed, {} skipped\n", sm.passed, sm.failed, sm.skipped));
            out
        }
    }
}
