use clap::ValueEnum;
use num_complex::Complex64;
use riesz_core::complex;
use riesz_core::verify::{
    audit_divergence, audit_optimality, audit_signs, exceptional_checks, fit_error_orders, run_identity_suite, Case,
    IdentityOptions, OptimalityOptions, VerificationReport, DEFAULT_GRID,
};
use riesz_core::{Engine, Error, Mp, PrecisionConfig, Real};

use crate::{precision_config, CliResult};

/// Digits used by the order suite and the table when double precision is configured.
pub const ORDER_DIGITS: u32 = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Identity,
    Order,
    Signs,
    Divergence,
    Optimality,
    All,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOptions {
    pub precision: u32,
    pub seed: u64,
    pub s: Option<Complex64>,
    pub n: Option<u64>,
    pub p: Option<usize>,
    pub n_max: Option<usize>,
    pub trials: usize,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { precision: 15, seed: 0, s: None, n: None, p: None, n_max: None, trials: 1000 }
    }
}

const ORDER_CASES: [(f64, f64, &[usize]); 6] = [
    (0.5, 0.0, &[0, 1, 2, 3]),
    (0.5, 1.3, &[2]),
    (1.0, 0.0, &[2]),
    (3.0, 0.0, &[2]),
    (-1.5, 0.0, &[1]),
    (2.0, 0.0, &[1]),
];
const SIGN_CASES: [f64; 3] = [0.5, 3.0, 5.5];
const DIVERGENCE_CASES: [f64; 3] = [0.5, 1.5, 2.0];
const OPTIMALITY_CASES: [(f64, u64); 6] = [(0.5, 20), (1.0, 20), (3.0, 20), (-1.0, 20), (-2.0, 20), (-3.0, 4)];
const EXCEPTIONAL_N: u64 = 10_000;

fn real_s(s: Option<Complex64>, what: &str) -> CliResult<Option<f64>> {
    match s {
        Some(z) if z.im != 0.0 => Err(Error::Domain(format!("the {what} audit needs real s, got {z}")).into()),
        Some(z) => Ok(Some(z.re)),
        None => Ok(None),
    }
}

fn extended_engine(digits: u32) -> CliResult<Engine<Mp>> {
    Ok(Engine::new(PrecisionConfig::extended(digits))?)
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> CliResult<VerificationReport> {
    let cfg = precision_config(opts.precision)?;
    match suite {
        Suite::Identity => identity(opts),
        Suite::Order => order(opts, &extended_engine(cfg.as_ref().map_or(ORDER_DIGITS, |c| c.digits))?),
        Suite::Signs => match cfg {
            Some(c) => signs(opts, &Engine::<Mp>::new(c)?),
            None => signs(opts, Engine::shared()),
        },
        Suite::Divergence => match cfg {
            Some(c) => divergence(opts, &Engine::<Mp>::new(c)?),
            None => Err(Error::Configuration(
                "the divergence audit needs extended precision: pass --precision 50 or more".into(),
            )
            .into()),
        },
        Suite::Optimality => optimality(opts),
        Suite::All => {
            let mut report = VerificationReport::new("all", opts.precision, Some(opts.seed));
            report.absorb(identity(opts)?);
            let mp = extended_engine(cfg.as_ref().map_or(ORDER_DIGITS, |c| c.digits))?;
            report.absorb(order(opts, &mp)?);
            match cfg {
                Some(_) => {
                    report.absorb(signs(opts, &mp)?);
                    report.absorb(divergence(opts, &mp)?);
                }
                None => {
                    report.absorb(signs(opts, Engine::shared())?);
                    let mut skipped = VerificationReport::new("divergence", opts.precision, None);
                    skipped.push(Case::skipped(
                        "divergence",
                        serde_json::Value::Null,
                        "needs extended precision (--precision 50 or more)",
                    ));
                    report.absorb(skipped);
                }
            }
            report.absorb(optimality(opts)?);
            Ok(report)
        }
    }
}

fn identity(opts: &SuiteOptions) -> CliResult<VerificationReport> {
    let id = IdentityOptions {
        seed: opts.seed,
        n_max: opts.n_max.unwrap_or(IdentityOptions::default().n_max),
        ..IdentityOptions::default()
    };
    Ok(run_identity_suite(Engine::shared(), &id)?)
}

fn order(opts: &SuiteOptions, engine: &Engine<Mp>) -> CliResult<VerificationReport> {
    let digits = engine.config().digits;
    let mut report = VerificationReport::new("order", digits, None);
    let custom: Vec<usize>;
    let cases: Vec<(Complex64, &[usize])> = match opts.s {
        Some(s) => {
            custom = opts.p.map_or(vec![0, 1, 2, 3], |p| vec![p]);
            vec![(s, custom.as_slice())]
        }
        None => ORDER_CASES.iter().map(|(re, im, ps)| (Complex64::new(*re, *im), *ps)).collect(),
    };
    for (s, ps) in cases {
        let z = complex::from_f64::<Mp>(s.re, s.im);
        for fit in fit_error_orders(engine, &z, ps, &DEFAULT_GRID)? {
            report.push_fit(fit);
        }
    }
    if opts.s.is_none() {
        let checks = exceptional_checks(engine, EXCEPTIONAL_N, digits)?;
        report.absorb(checks);
    }
    Ok(report)
}

fn signs<T: Real>(opts: &SuiteOptions, engine: &Engine<T>) -> CliResult<VerificationReport> {
    let digits = engine.config().digits;
    let list = real_s(opts.s, "sign")?.map_or(SIGN_CASES.to_vec(), |s| vec![s]);
    let mut report = VerificationReport::new("signs", digits, None);
    for s in list {
        for c in audit_signs(engine, s, opts.n_max.unwrap_or(10), digits)?.cases {
            report.push(c);
        }
    }
    Ok(report)
}

fn divergence(opts: &SuiteOptions, engine: &Engine<Mp>) -> CliResult<VerificationReport> {
    let digits = engine.config().digits;
    let list = real_s(opts.s, "divergence")?.map_or(DIVERGENCE_CASES.to_vec(), |s| vec![s]);
    let sizes = opts.n.map_or(vec![2, 3], |n| vec![n]);
    let mut report = VerificationReport::new("divergence", digits, None);
    for s in list {
        for &n in &sizes {
            for c in audit_divergence(engine, s, n, digits)?.cases {
                report.push(c);
            }
        }
    }
    Ok(report)
}

fn optimality(opts: &SuiteOptions) -> CliResult<VerificationReport> {
    let cases: Vec<(f64, u64)> = match (real_s(opts.s, "optimality")?, opts.n) {
        (None, None) => OPTIMALITY_CASES.to_vec(),
        (Some(s), n) => vec![(s, n.unwrap_or(if s < -2.0 { 4 } else { 20 }))],
        (None, Some(n)) => OPTIMALITY_CASES.iter().map(|(s, _)| (*s, n)).collect(),
    };
    let o = OptimalityOptions { trials: opts.trials, seed: opts.seed, ..OptimalityOptions::default() };
    let mut report = VerificationReport::new("optimality", riesz_core::config::DOUBLE_DIGITS, Some(opts.seed));
    for (s, n) in cases {
        for c in audit_optimality(s, n, &o)?.cases {
            report.push(c);
        }
    }
    Ok(report)
}
