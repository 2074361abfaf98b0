use serde::{Deserialize, Serialize};

/// Environment variable overriding the default absolute tolerance.
pub const TOLERANCE_ENV: &str = "CROSS_TOL";

/// Tolerances shared by every verifier in the crate.
///
/// `abs` and `rel` decide whether a residual counts as zero. Eigenvalue
/// clustering uses the looser `eigen_cluster`, since eigenvalues of `ad²`
/// are second-order quantities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    pub abs: f64,
    pub rel: f64,
    pub eigen_cluster: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self { abs: 1e-9, rel: 1e-9, eigen_cluster: 1e-7 }
    }
}

impl ToleranceConfig {
    pub fn with_abs(abs: f64) -> Self {
        Self { abs, ..Self::default() }
    }

    /// Default tolerances, with `abs` taken from `CROSS_TOL` when it parses
    /// as a positive float.
    pub fn from_env() -> Self {
        match std::env::var(TOLERANCE_ENV).ok().and_then(|s| s.trim().parse::<f64>().ok()) {
            Some(t) if t.is_finite() && t > 0.0 => Self::with_abs(t),
            _ => Self::default(),
        }
    }

    pub fn is_zero(&self, x: f64) -> bool {
        x.abs() <= self.abs
    }

    pub fn close(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.abs + self.rel * a.abs().max(b.abs())
    }
}
