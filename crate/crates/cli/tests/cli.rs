use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn riesz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_riesz"))
        .args(args)
        .env_remove("RIESZ_PRECISION")
        .output()
        .expect("riesz runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("bad json ({e}): {}\nstderr: {}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    })
}

fn assert_schema(name: &str, instance: &Value) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema").join(format!("{name}.schema.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema compiles");
    let msgs: Vec<String> = match compiled.validate(instance) {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    assert!(msgs.is_empty(), "{name} payload does not validate: {msgs:?}\n{instance}");
}

#[test]
fn energy_direct_quadratic() {
    let out = riesz(&["energy", "--s", "2", "--N", "4", "--method", "direct"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_schema("energy", &v);
    assert!((v["value"][0].as_f64().unwrap() - 5.0).abs() < 1e-13);
}

#[test]
fn energy_zero_defaults_to_log() {
    let out = riesz(&["energy", "--s", "0", "--N", "10"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_schema("energy", &v);
    let expected = -10.0 * 10f64.ln();
    assert!((v["value"][0].as_f64().unwrap() - expected).abs() < 1e-12);
}

#[test]
fn energy_asymptotic_with_log_term() {
    let out = riesz(&["energy", "--s", "1+0i", "--N", "100", "--method", "asymptotic", "--p", "3"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_schema("energy", &v);
    assert!(v["log_coefficient"].is_number(), "{v}");
    assert!(!v["terms"].as_array().unwrap().is_empty());
    let direct = json(&riesz(&["energy", "--s", "1", "--N", "100"]));
    let (a, d) = (v["value"][0].as_f64().unwrap(), direct["value"][0].as_f64().unwrap());
    assert!(((a - d) / d).abs() < 1e-9, "{a} vs {d}");
}

#[test]
fn energy_in_extended_precision() {
    let out = riesz(&["energy", "--s", "2", "--N", "4", "--precision", "50"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_schema("energy", &v);
    assert_eq!(v["precision_digits"], 50);
    // 45 correct digits either side of 5
    let text = v["value_text"][0].as_str().unwrap();
    assert!(text.starts_with("5.0000000000000000000000000000000000000000000") || text.starts_with("4.9999999999999999999999999999999999999999999"), "{text}");
}

#[test]
fn energy_errors() {
    assert_eq!(code(&riesz(&["energy", "--s", "0", "--N", "10", "--method", "direct"])), 3);
    assert_eq!(code(&riesz(&["energy", "--s", "1 + 2i", "--N", "10"])), 2);
    assert_eq!(code(&riesz(&["energy", "--s", "abc", "--N", "10"])), 2);
    assert_eq!(code(&riesz(&["energy", "--s", "2", "--N", "1"])), 3);
    let out = riesz(&["energy", "--s", "2", "--N", "4", "--precision", "30"]);
    assert_eq!(code(&out), 3);
    assert!(!out.stderr.is_empty());
}

#[test]
fn precision_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_riesz"))
        .args(["energy", "--s", "2", "--N", "4"])
        .env("RIESZ_PRECISION", "50")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["precision_digits"], 50);
}

#[test]
fn coeffs_table_and_values() {
    let out = riesz(&["coeffs", "--n-max", "2"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_schema("coeffs", &v);
    assert_eq!(v["alpha"][1]["rationals"][1], "1/6");
    assert_eq!(v["alpha"][1]["pi_power"], 2);

    let v = json(&riesz(&["coeffs", "--n-max", "0"]));
    assert_schema("coeffs", &v);
    assert_eq!(v["alpha"][0]["rationals"][0], "1");

    let out = riesz(&["coeffs", "--n-max", "1", "--s", "2"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_schema("coeffs", &v);
    let c1 = &v["coefficients"][1];
    assert_eq!(c1["exact"], "-1/12");
}

#[test]
fn coeffs_exceptional_index() {
    assert_eq!(code(&riesz(&["coeffs", "--n-max", "2", "--s", "3"])), 3);
    let out = riesz(&["coeffs", "--n-max", "2", "--s", "3", "--exceptional"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_schema("coeffs", &v);
    let pi = std::f64::consts::PI;
    assert!((v["log_coefficient"].as_f64().unwrap() - 1.0 / (8.0 * pi)).abs() < 1e-15);
}

#[test]
fn verify_identity_passes() {
    let out = riesz(&["verify", "--suite", "identity"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    assert_schema("report", &v);
    assert_eq!(v["summary"]["failed"], 0);
}

#[test]
fn verify_order_single_fit() {
    let out = riesz(&["verify", "--suite", "order", "--s", "0.5", "--p", "3"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_schema("report", &v);
    let fit = &v["fits"][0];
    assert_eq!(fit["expected_slope"], -6.5);
    assert!((fit["fitted_slope"].as_f64().unwrap() + 6.5).abs() < 0.2);

    let csv = riesz(&["verify", "--suite", "order", "--s", "0.5", "--p", "3", "--format", "csv"]);
    let text = String::from_utf8(csv.stdout).unwrap();
    assert!(text.starts_with("N,err,predicted_order\n"));
    assert_eq!(text.lines().count(), 1 + 6);
}

#[test]
fn verify_divergence_needs_extended_precision() {
    assert_eq!(code(&riesz(&["verify", "--suite", "divergence", "--s", "0.5"])), 3);
}

#[test]
fn verify_signs_domain_and_optimality() {
    // sign audit is undefined at even s
    let out = riesz(&["verify", "--suite", "signs", "--s", "2"]);
    assert_eq!(code(&out), 3);
    let out = riesz(&["verify", "--suite", "optimality", "--s", "0.5", "--N", "20", "--trials", "50", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    assert_schema("report", &json(&out));
}

#[test]
fn table_rows_and_schema() {
    let out = riesz(&["table", "--s", "0.5", "--N", "128,256,512", "--p", "3"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(!text.contains('\r'));
    let header: Vec<&str> = lines[0].split(',').collect();
    let col = header.iter().position(|h| *h == "err").unwrap();
    let errs: Vec<f64> = lines[1..].iter().map(|l| l.split(',').nth(col).unwrap().parse().unwrap()).collect();
    for w in errs.windows(2) {
        let ratio = (w[0] / w[1]).log2();
        assert!((ratio - 6.5).abs() < 0.5, "{errs:?}");
    }

    let out = riesz(&["table", "--s", "2", "--N", "10"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let header: Vec<&str> = text.lines().next().unwrap().split(',').collect();
    let col = header.iter().position(|h| *h == "err").unwrap();
    let err: f64 = text.lines().nth(1).unwrap().split(',').nth(col).unwrap().parse().unwrap();
    assert_eq!(err, 0.0);

    let out = riesz(&["table", "--s", "0.5,2", "--N", "16,32", "--format", "json"]);
    let v = json(&out);
    assert_schema("table", &v);
    assert_eq!(v.as_array().unwrap().len(), 4);
}

#[test]
fn table_parse_errors() {
    assert_eq!(code(&riesz(&["table", "--s", "0.5", "--N", ""])), 2);
    assert_eq!(code(&riesz(&["table", "--s", "0.5"])), 2);
    assert_eq!(code(&riesz(&["table", "--s", "x", "--N", "10"])), 2);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("riesz-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("energy.json");
    let out = riesz(&["energy", "--s", "2", "--N", "4", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_schema("energy", &v);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn identical_invocations_match() {
    let a = riesz(&["verify", "--suite", "optimality", "--seed", "9", "--trials", "100"]);
    let b = riesz(&["verify", "--suite", "optimality", "--seed", "9", "--trials", "100"]);
    assert_eq!(a.stdout, b.stdout);
}
