use num_complex::Complex64;
use riesz_core::verify::{
    audit_divergence, audit_optimality, audit_signs, clustered_energy, exceptional_checks, fit_error_orders,
    least_squares_slope, run_identity_suite, IdentityOptions, Mode, OptimalityOptions, DEFAULT_GRID,
};
use riesz_core::{Engine, Error, Mp, PrecisionConfig};

fn failures(r: &riesz_core::verify::VerificationReport) -> Vec<String> {
    r.cases.iter().filter(|c| !c.pass).map(|c| format!("{} residual {:e}: {:?}", c.id, c.residual, c.note)).collect()
}

#[test]
fn identity_suite_passes() {
    let r = run_identity_suite(Engine::shared(), &IdentityOptions::default()).unwrap();
    assert!(r.all_passed(), "{:#?}", failures(&r));
    assert!(r.cases.len() > 100);
}

#[test]
fn identity_suite_is_deterministic() {
    let opts = IdentityOptions { seed: 7, n_grid_max: 50, ..IdentityOptions::default() };
    let a = run_identity_suite(Engine::shared(), &opts).unwrap().to_json_pretty();
    let b = run_identity_suite(Engine::shared(), &opts).unwrap().to_json_pretty();
    assert_eq!(a, b);
}

#[test]
fn slope_of_exact_power() {
    let x: Vec<f64> = (1..6).map(|k| (k as f64).ln()).collect();
    let y: Vec<f64> = x.iter().map(|v| -3.5 * v + 2.0).collect();
    assert!((least_squares_slope(&x, &y).unwrap() + 3.5).abs() < 1e-12);
    assert!(least_squares_slope(&x[..1], &y[..1]).is_none());
}

#[test]
fn low_order_fit_in_double_precision() {
    let e = Engine::shared();
    let fits = fit_error_orders(e, &Complex64::new(0.5, 0.0), &[0, 1], &DEFAULT_GRID[..4]).unwrap();
    for f in &fits {
        assert!(f.pass, "{f:?}");
    }
    let fits = fit_error_orders(e, &Complex64::new(2.0, 0.0), &[1], &[16, 32, 64]).unwrap();
    assert!(fits[0].exact && fits[0].pass && fits[0].fitted_slope.is_none());
    assert!(fits[0].to_csv().starts_with("N,err,predicted_order\n16,"));
    assert!(fit_error_orders(e, &Complex64::new(0.5, 0.0), &[1], &[64, 32]).is_err());
}

#[test]
fn signs() {
    let e = Engine::shared();
    for s in [0.5, 3.0, 5.5] {
        let r = audit_signs(e, s, 10, 15).unwrap();
        assert!(r.all_passed(), "{:#?}", failures(&r));
    }
    let r = audit_signs(e, 3.0, 10, 15).unwrap();
    // n = 1 is the exceptional index, n >= 2 with s - 2n even negative are trivial zeros
    assert_eq!(r.cases[1].mode, Mode::Skipped);
    assert_eq!(r.cases[2].got, serde_json::json!(-1));
    assert_eq!(r.cases[0].got, serde_json::json!(1));
    assert_eq!(audit_signs(e, 0.5, 10, 15).unwrap().cases[0].got, serde_json::json!(-1));
    assert!(matches!(audit_signs(e, 6.0, 10, 15), Err(Error::Domain(_))));
}

#[test]
fn divergence_needs_extended_precision() {
    assert!(matches!(audit_divergence(Engine::shared(), 0.5, 2, 15), Err(Error::Configuration(_))));
}

#[test]
fn divergence_extended() {
    let e = Engine::<Mp>::new(PrecisionConfig::extended(60)).unwrap();
    for s in [0.5, 1.5] {
        for n in [2, 3] {
            let r = audit_divergence(&e, s, n, 60).unwrap();
            assert!(r.all_passed(), "{:#?}", r.cases);
        }
    }
    let r = audit_divergence(&e, 2.0, 2, 60).unwrap();
    assert!(r.all_passed());
    assert!(r.cases[0].note.as_deref().unwrap().contains("terminating"));
}

#[test]
fn optimality() {
    let opts = OptimalityOptions { trials: 200, scale: 1e-3, seed: 3 };
    for s in [0.5, 1.0, 3.0, -1.0, 0.0] {
        let r = audit_optimality(s, 20, &opts).unwrap();
        assert!(r.all_passed(), "s = {s}: {:#?}", r.cases);
    }
    assert_eq!(audit_optimality(-2.0, 20, &opts).unwrap().cases[0].mode, Mode::Skipped);
    let r = audit_optimality(-3.0, 4, &opts).unwrap();
    assert!(r.all_passed(), "{:#?}", r.cases);
    assert_eq!(clustered_energy(-3.0, 4), 64.0);
    assert!(audit_optimality(1.0, 2, &opts).is_err());
    assert!(audit_optimality(1.0, 10, &OptimalityOptions { scale: 0.1, ..opts }).is_err());
}

#[test]
fn exceptional_in_double_precision() {
    let r = exceptional_checks(Engine::shared(), 2000, 15).unwrap();
    assert!(r.all_passed(), "{:#?}", r.cases);
}
