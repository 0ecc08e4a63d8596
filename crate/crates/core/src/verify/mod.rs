//! Verification suites producing machine-readable reports.

mod audits;
mod identity;
mod order;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::Value;

pub use audits::{audit_divergence, audit_optimality, audit_signs, clustered_energy, OptimalityOptions};
pub use identity::{run_identity_suite, IdentityOptions, IDENTITY_CASES};
pub use order::{
    exceptional_checks, fit_error_order, fit_error_orders, least_squares_slope, SlopeFitReport, DEFAULT_GRID,
    SLOPE_TOLERANCE, SLOPE_TOLERANCE_COMPLEX,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// `|got - expected| <= tolerance * |expected|`
    Relative,
    /// `|got - expected| <= tolerance`
    Absolute,
    /// bit-for-bit equality
    Exact,
    /// `residual <= expected`, where `expected` is an error bound
    Bound,
    /// a qualitative check (sign, inequality, count)
    Check,
    /// not evaluated; see the note
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Case {
    pub id: String,
    pub inputs: Value,
    pub expected: Value,
    pub got: Value,
    pub residual: f64,
    pub tolerance: f64,
    pub mode: Mode,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

pub(crate) fn cx_json(z: Complex64) -> Value {
    if z.im == 0.0 {
        serde_json::json!(z.re)
    } else {
        serde_json::json!([z.re, z.im])
    }
}

impl Case {
    /// Relative comparison of complex values.
    pub fn relative(id: impl Into<String>, inputs: Value, expected: Complex64, got: Complex64, tolerance: f64) -> Case {
        let diff = (got - expected).norm();
        let scale = expected.norm();
        let residual = if scale == 0.0 { diff } else { diff / scale };
        Case {
            id: id.into(),
            inputs,
            expected: cx_json(expected),
            got: cx_json(got),
            residual,
            tolerance,
            mode: Mode::Relative,
            pass: residual <= tolerance,
            note: None,
        }
    }

    pub fn absolute(id: impl Into<String>, inputs: Value, expected: Complex64, got: Complex64, tolerance: f64) -> Case {
        let residual = (got - expected).norm();
        Case {
            id: id.into(),
            inputs,
            expected: cx_json(expected),
            got: cx_json(got),
            residual,
            tolerance,
            mode: Mode::Absolute,
            pass: residual <= tolerance,
            note: None,
        }
    }

    pub fn exact(id: impl Into<String>, inputs: Value, expected: Complex64, got: Complex64) -> Case {
        Case {
            id: id.into(),
            inputs,
            expected: cx_json(expected),
            got: cx_json(got),
            residual: (got - expected).norm(),
            tolerance: 0.0,
            mode: Mode::Exact,
            pass: got == expected,
            note: None,
        }
    }

    /// `residual <= bound`.
    pub fn bound(id: impl Into<String>, inputs: Value, bound: f64, residual: f64) -> Case {
        Case {
            id: id.into(),
            inputs,
            expected: serde_json::json!(bound),
            got: serde_json::json!(residual),
            residual,
            tolerance: bound,
            mode: Mode::Bound,
            pass: residual <= bound,
            note: None,
        }
    }

    pub fn check(id: impl Into<String>, inputs: Value, expected: Value, got: Value, pass: bool) -> Case {
        Case {
            id: id.into(),
            inputs,
            expected,
            got,
            residual: 0.0,
            tolerance: 0.0,
            mode: Mode::Check,
            pass,
            note: None,
        }
    }

    pub fn skipped(id: impl Into<String>, inputs: Value, note: impl Into<String>) -> Case {
        Case {
            id: id.into(),
            inputs,
            expected: Value::Null,
            got: Value::Null,
            residual: 0.0,
            tolerance: 0.0,
            mode: Mode::Skipped,
            pass: true,
            note: Some(note.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Case {
        self.note = Some(note.into());
        self
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub precision_digits: u32,
    pub cases: Vec<Case>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub fits: Vec<SlopeFitReport>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, precision_digits: u32, seed: Option<u64>) -> Self {
        VerificationReport {
            suite: suite.into(),
            seed,
            precision_digits,
            cases: Vec::new(),
            fits: Vec::new(),
            summary: Summary::default(),
        }
    }

    pub fn push(&mut self, case: Case) {
        self.cases.push(case);
        self.refresh();
    }

    pub fn push_fit(&mut self, fit: SlopeFitReport) {
        self.fits.push(fit);
        self.refresh();
    }

    /// Appends the cases and fits of `other`, prefixing case ids with its suite name.
    pub fn absorb(&mut self, other: VerificationReport) {
        for mut c in other.cases {
            c.id = format!("{}/{}", other.suite, c.id);
            self.cases.push(c);
        }
        self.fits.extend(other.fits);
        self.refresh();
    }

    fn refresh(&mut self) {
        let mut s = Summary::default();
        for c in &self.cases {
            s.total += 1;
            match (c.mode, c.pass) {
                (Mode::Skipped, _) => s.skipped += 1,
                (_, true) => s.passed += 1,
                (_, false) => s.failed += 1,
            }
        }
        for f in &self.fits {
            s.total += 1;
            if f.pass {
                s.passed += 1;
            } else {
                s.failed += 1;
            }
        }
        self.summary = s;
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_modes() {
        let c = Case::relative("a", Value::Null, Complex64::new(2.0, 0.0), Complex64::new(2.0 + 1e-13, 0.0), 1e-12);
        assert!(c.pass);
        let c = Case::absolute("b", Value::Null, Complex64::new(0.0, 1.0), Complex64::new(0.0, 1.1), 1e-3);
        assert!(!c.pass);
        assert!(Case::exact("c", Value::Null, Complex64::new(5.0, 0.0), Complex64::new(5.0, 0.0)).pass);
        assert!(!Case::bound("d", Value::Null, 1e-5, 2e-5).pass);
    }

    #[test]
    fn summary_counts() {
        let mut r = VerificationReport::new("x", 15, Some(1));
        r.push(Case::check("ok", Value::Null, Value::Null, Value::Null, true));
        r.push(Case::check("bad", Value::Null, Value::Null, Value::Null, false));
        r.push(Case::skipped("later", Value::Null, "needs extended precision"));
        assert_eq!(r.summary, Summary { total: 3, passed: 1, failed: 1, skipped: 1 });
        assert!(!r.all_passed());
        let mut all = VerificationReport::new("all", 15, Some(1));
        all.absorb(r);
        assert_eq!(all.cases[0].id, "x/ok");
        assert_eq!(all.summary.failed, 1);
    }
}
