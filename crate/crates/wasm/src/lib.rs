//! wasm-bindgen exports for the browser demo in `www/`.
//!
//! Every export returns a JSON string; errors surface as JS exceptions.

use num_complex::Complex64;
use riesz_core::energy::Method;
use riesz_core::verify::{audit_optimality, OptimalityOptions};
use riesz_core::Engine;
use serde::Serialize;
use wasm_bindgen::prelude::*;

const DEMO_N_MAX: u64 = 20_000;

fn js_err(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

fn check_n(n: u32) -> Result<u64, String> {
    let n = u64::from(n);
    if n > DEMO_N_MAX {
        return Err(format!("N is capped at {DEMO_N_MAX} in the browser"));
    }
    Ok(n)
}

/// L_s(N) by `method` (direct, series, asymptotic or log) in double precision.
pub fn energy_json(s_re: f64, s_im: f64, n: u32, method: &str, p: usize) -> Result<String, String> {
    let method: Method = method.parse()?;
    let n = check_n(n)?;
    let engine = Engine::shared();
    let r = engine
        .evaluate(method, &Complex64::new(s_re, s_im), n, p, engine.config().n_max)
        .map_err(|e| e.to_string())?;
    serde_json::to_string(&r).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct ErrorPoint {
    #[serde(rename = "N")]
    n: u64,
    direct: [f64; 2],
    asymptotic: [f64; 2],
    err: f64,
}

#[derive(Serialize)]
struct ErrorCurve {
    s: [f64; 2],
    p: usize,
    remainder_order: f64,
    points: Vec<ErrorPoint>,
}

/// |direct - asymptotic| at each N, with the predicted exponent of N.
pub fn error_curve_json(s_re: f64, s_im: f64, p: usize, sizes: &[u32]) -> Result<String, String> {
    let engine = Engine::shared();
    let s = Complex64::new(s_re, s_im);
    let mut points = Vec::with_capacity(sizes.len());
    let mut order = f64::NAN;
    for &n in sizes {
        let n = check_n(n)?;
        let direct = engine.energy_direct(&s, n).map_err(|e| e.to_string())?;
        let (asym, exp) = engine.energy_asymptotic(&s, n, p).map_err(|e| e.to_string())?;
        order = exp.remainder_order;
        points.push(ErrorPoint { n, direct: [direct.re, direct.im], asymptotic: [asym.re, asym.im], err: (direct - asym).norm() });
    }
    serde_json::to_string(&ErrorCurve { s: [s_re, s_im], p, remainder_order: order, points }).map_err(|e| e.to_string())
}

/// Random perturbation audit of the roots of unity as an energy optimizer.
pub fn optimality_json(s: f64, n: u32, trials: usize, scale: f64, seed: u64) -> Result<String, String> {
    let n = check_n(n)?;
    let opts = OptimalityOptions { trials, scale, seed };
    let report = audit_optimality(s, n, &opts).map_err(|e| e.to_string())?;
    Ok(report.to_json_pretty())
}

#[wasm_bindgen]
pub fn energy(s_re: f64, s_im: f64, n: u32, method: &str, p: usize) -> Result<String, JsError> {
    energy_json(s_re, s_im, n, method, p).map_err(js_err)
}

#[wasm_bindgen(js_name = errorCurve)]
pub fn error_curve(s_re: f64, s_im: f64, p: usize, sizes: Vec<u32>) -> Result<String, JsError> {
    error_curve_json(s_re, s_im, p, &sizes).map_err(js_err)
}

#[wasm_bindgen]
pub fn optimality(s: f64, n: u32, trials: usize, scale: f64, seed: u64) -> Result<String, JsError> {
    optimality_json(s, n, trials, scale, seed).map_err(js_err)
}
