//! Frozen values obtained by brute-force evaluation, and the code that
//! regenerates them.

use serde::{Deserialize, Serialize};

use crate::contact::{classify, standard_structure, uniqueness_scan};
use crate::crossmodel::{CrossModel, SpaceId};
use crate::report::Check;
use crate::{Error, Result, ToleranceConfig};

const STORED: &str = include_str!("../fixtures/derived.json");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureEntry {
    pub name: String,
    pub value: f64,
    pub tolerance: f64,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureFile {
    pub version: u32,
    pub entries: Vec<FixtureEntry>,
}

impl FixtureFile {
    pub fn get(&self, name: &str) -> Option<&FixtureEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("fixtures serialize");
        s.push('\n');
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FixtureDiff {
    pub name: String,
    pub stored: Option<f64>,
    pub computed: Option<f64>,
    pub within_tolerance: bool,
}

pub fn stored_fixtures() -> Result<FixtureFile> {
    serde_json::from_str(STORED).map_err(|e| Error::Internal(format!("fixture file: {e}")))
}

fn slug(s: SpaceId) -> String {
    s.to_string().to_ascii_lowercase().replace('^', "")
}

fn entry(name: String, value: f64, provenance: &str) -> FixtureEntry {
    FixtureEntry { name, value, tolerance: 1e-9, provenance: provenance.to_string() }
}

/// Recompute every frozen value from scratch.
pub fn compute_fixtures(tol: &ToleranceConfig) -> Result<FixtureFile> {
    let mut entries = Vec::new();
    for s in SpaceId::representatives() {
        let frame = CrossModel::build(s, tol)?.frame;
        let c = classify(&standard_structure(&frame, 0.5)?, &frame, tol);
        let k = slug(s);
        entries.push(entry(
            format!("nijenhuis_standard_{k}_r_half"),
            c.residuals.nijenhuis,
            "max over frame pairs i<j of max-norm N(e_i,e_j), standard structure, r=1/2",
        ));
        entries.push(entry(
            format!("nabla_phi_standard_{k}_r_half"),
            c.residuals.nabla_phi,
            "max over frame pairs of the nabla-phi identity defect, standard structure, r=1/2",
        ));
        entries.push(entry(
            format!("killing_standard_{k}_r_half"),
            c.residuals.killing,
            "Killing defect of the characteristic field, standard structure, r=1/2",
        ));
    }
    for s in [SpaceId::complex_projective(2)?, SpaceId::quaternionic_projective(1)?] {
        let frame = CrossModel::build(s, tol)?.frame;
        let scan = uniqueness_scan(&frame, 1.0, 1.0, 5, tol)?;
        entries.push(entry(
            format!("uniqueness_min_failing_{}_kappa_1", slug(s)),
            scan.min_failing_residual(),
            "smallest residual among failing points of the 5-point log grid, r=1, kappa=1",
        ));
    }
    Ok(FixtureFile { version: 1, entries })
}

pub fn diff_fixtures(stored: &FixtureFile, computed: &FixtureFile) -> Vec<FixtureDiff> {
    let mut names: Vec<&str> = stored.entries.iter().chain(&computed.entries).map(|e| e.name.as_str()).collect();
    names.sort_unstable();
    names.dedup();
    names
        .into_iter()
        .map(|n| {
            let a = stored.get(n);
            let b = computed.get(n);
            let within = match (a, b) {
                (Some(a), Some(b)) => (a.value - b.value).abs() <= a.tolerance,
                _ => false,
            };
            FixtureDiff { name: n.to_string(), stored: a.map(|e| e.value), computed: b.map(|e| e.value), within_tolerance: within }
        })
        .collect()
}

pub fn fixture_checks(tol: &ToleranceConfig) -> Result<Vec<Check>> {
    let stored = stored_fixtures()?;
    let computed = compute_fixtures(tol)?;
    Ok(diff_fixtures(&stored, &computed)
        .into_iter()
        .map(|d| {
            Check::exact(
                format!("fixture {}", d.name),
                "frozen brute-force value",
                d.within_tolerance,
                format!("stored {:?}, computed {:?}", d.stored, d.computed),
            )
        })
        .collect())
}
