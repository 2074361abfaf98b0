//! Named pass/fail checks and the aggregate report.

use serde::{Deserialize, Serialize};

use crate::suites::RunConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    /// Which statement of the theory the check exercises, in words.
    pub claim_ref: String,
    pub passed: bool,
    pub residual: Option<f64>,
    pub details: String,
}

impl Check {
    /// Passes when `residual <= tol`. NaN never passes.
    pub fn residual(name: impl Into<String>, claim_ref: impl Into<String>, residual: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            claim_ref: claim_ref.into(),
            passed: residual <= tol,
            residual: Some(residual),
            details: format!("residual {residual:.3e} (tol {tol:.1e})"),
        }
    }

    pub fn exact(
        name: impl Into<String>,
        claim_ref: impl Into<String>,
        passed: bool,
        details: impl Into<String>,
    ) -> Self {
        Self { name: name.into(), claim_ref: claim_ref.into(), passed, residual: None, details: details.into() }
    }

    pub fn with_details(mut self, details: impl Into<String>) -> Self {
        self.details = details.into();
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

impl Summary {
    pub fn of(checks: &[Check]) -> Self {
        let passed = checks.iter().filter(|c| c.passed).count();
        Self { total: checks.len(), passed, failed: checks.len() - passed }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub config: RunConfig,
    pub checks: Vec<Check>,
    pub summary: Summary,
    /// Seconds; only recorded on request so that JSON output stays reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time: Option<f64>,
}

impl VerificationReport {
    pub fn new(config: RunConfig, checks: Vec<Check>) -> Self {
        let summary = Summary::of(&checks);
        Self { config, checks, summary, wall_time: None }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "space {} | suite {} | r = {} | kappa = {} | tol = {:e}\n",
            self.config.space, self.config.suite, self.config.radius, self.config.kappa, self.config.tol
        ));
        for c in &self.checks {
            out.push_str(&format!(
                "[{}] {} :: {} ({})\n",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.details,
                c.claim_ref
            ));
        }
        out.push_str(&format!(
            "{} checks, {} passed, {} failed\n",
            self.summary.total, self.summary.passed, self.summary.failed
        ));
        if let Some(t) = self.wall_time {
            out.push_str(&format!("wall time {t:.3} s\n"));
        }
        out
    }
}

/// Largest value, with NaN propagated so that a broken computation fails.
pub(crate) fn max_abs<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut m: f64 = 0.0;
    for v in values {
        if v.is_nan() {
            return f64::NAN;
        }
        m = m.max(v.abs());
    }
    m
}
