//! Named verification suites over one space, dispatched from a [`RunConfig`].

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::contact::{classify, tashiro_suite, theorem_main_structure, theorem_proof_identities, uniqueness_scan};
use crate::crossmodel::{center_of_h, fixture_check_cp_brackets, table1_checks, verify_bracket_laws, CrossModel, SpaceFamily, SpaceId};
use crate::error::check_positive;
use crate::homgeo::{is_killing, is_naturally_reductive, log_uniform_params, metric_from_params, u_closed_form, u_map, MetricParams};
use crate::report::{max_abs, Check, VerificationReport};
use crate::{Error, Result, ToleranceConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Table1,
    Brackets,
    Metrics,
    Tashiro,
    Sasakian,
    Uniqueness,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [Suite::Table1, Suite::Brackets, Suite::Metrics, Suite::Tashiro, Suite::Sasakian, Suite::Uniqueness];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Table1 => "table1",
            Suite::Brackets => "brackets",
            Suite::Metrics => "metrics",
            Suite::Tashiro => "tashiro",
            Suite::Sasakian => "sasakian",
            Suite::Uniqueness => "uniqueness",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub space: SpaceId,
    pub radius: f64,
    pub kappa: f64,
    pub suite: Suite,
    pub tol: f64,
    pub grid: usize,
    /// `None` means stdout.
    pub output: Option<String>,
    pub format: Format,
}

impl RunConfig {
    pub fn new(space: SpaceId, suite: Suite) -> Self {
        Self { space, radius: 1.0, kappa: 1.0, suite, tol: 1e-9, grid: 5, output: None, format: Format::Text }
    }

    pub fn validate(&self) -> Result<()> {
        SpaceId::new(self.space.family, self.space.n)?;
        check_positive("radius", self.radius)?;
        check_positive("kappa", self.kappa)?;
        check_positive("tol", self.tol)?;
        if self.grid < 3 {
            return Err(Error::InvalidParameter(format!("grid must be at least 3, got {}", self.grid)));
        }
        Ok(())
    }

    pub fn tolerance(&self) -> ToleranceConfig {
        ToleranceConfig::with_abs(self.tol)
    }
}

pub const TASHIRO_RADII: [f64; 4] = [0.25, 0.5, 1.0, 2.0];

pub fn run(config: &RunConfig) -> Result<VerificationReport> {
    config.validate()?;
    let tol = config.tolerance();
    let model = CrossModel::build(config.space, &tol)?;
    let suites: Vec<Suite> = if config.suite == Suite::All { Suite::EACH.to_vec() } else { vec![config.suite] };
    // Suites are independent; the ordered collect keeps the merge deterministic.
    let parts = suites.par_iter().map(|&s| run_suite(s, &model, config, &tol)).collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new(config.clone(), parts.into_iter().flatten().collect()))
}

pub fn run_suite(suite: Suite, model: &CrossModel, config: &RunConfig, tol: &ToleranceConfig) -> Result<Vec<Check>> {
    match suite {
        Suite::Table1 => Ok(table1_suite(model, tol)),
        Suite::Brackets => brackets_suite(model, tol),
        Suite::Metrics => metrics_suite(model, config, tol),
        Suite::Tashiro => {
            let mut radii = TASHIRO_RADII.to_vec();
            if !radii.iter().any(|r| (r - config.radius).abs() < 1e-12) {
                radii.push(config.radius);
                radii.sort_by(f64::total_cmp);
            }
            tashiro_suite(&model.frame, &radii, tol)
        }
        Suite::Sasakian => sasakian_suite(model, config, tol),
        Suite::Uniqueness => uniqueness_suite(model, config, tol),
        Suite::All => {
            let mut all = Vec::new();
            for s in Suite::EACH {
                all.extend(run_suite(s, model, config, tol)?);
            }
            Ok(all)
        }
    }
}

fn table1_suite(model: &CrossModel, tol: &ToleranceConfig) -> Vec<Check> {
    let mut v = table1_checks(model);
    v.extend(model.pair.verify(tol));
    v.extend(model.verify_frame(tol));
    v
}

fn brackets_suite(model: &CrossModel, tol: &ToleranceConfig) -> Result<Vec<Check>> {
    let f = &model.frame;
    let mut v = verify_bracket_laws(f, tol);
    let z = center_of_h(f, tol).len();
    let expected = usize::from(f.space.family == SpaceFamily::ComplexProjective);
    v.push(Check::exact(
        format!("dim z(h) = {expected}"),
        "center of the isotropy algebra",
        z == expected,
        format!("computed {z}"),
    ));
    if f.space.family == SpaceFamily::ComplexProjective {
        v.extend(fixture_check_cp_brackets(f, tol)?);
    }
    Ok(v)
}

fn metrics_suite(model: &CrossModel, config: &RunConfig, tol: &ToleranceConfig) -> Result<Vec<Check>> {
    let f = &model.frame;
    let n = f.nbar;
    let e = |i: usize| f.unit(i).rows(0, n).into_owned();
    let mut worst: f64 = 0.0;
    for p in log_uniform_params(7, 20) {
        let g = metric_from_params(f, p)?;
        for i in 0..n {
            for j in 0..n {
                if let Some(c) = u_closed_form(f, &p, i, j) {
                    worst = worst.max((u_map(f, &g, &e(i), &e(j))? - c).amax());
                }
            }
        }
    }
    let mut v = vec![Check::residual("U closed forms match linear solve", "closed forms of the U-map", worst, tol.abs)];

    let x = e(0);
    let mut killing_ok = true;
    for (a, b) in [(1.0, 1.0), (0.7, 0.7), (1.0, 2.0), (2.0, 0.5)] {
        let p = MetricParams::new(1.0, a, 1.0, b, 1.0)?;
        let (k, _) = is_killing(f, &metric_from_params(f, p)?, &x, tol);
        killing_ok &= k == (a == b);
    }
    v.push(Check::exact("X Killing iff a_eps = b_eps", "Killing criterion for X", killing_ok, String::new()));

    let std = metric_from_params(f, MetricParams::standard(config.radius)?)?;
    let (k, res) = is_killing(f, &std, &x, tol);
    // b_ε = r² and b_{ε/2} = r²/4 cannot both match a_λ = 1 when there is an ε/2 root.
    let expect = (config.radius - 1.0).abs() < 1e-12 && f.m_half == 0;
    v.push(Check::exact(
        format!("X Killing for the Sasaki metric at r={}: {expect}", config.radius),
        "Killing criterion for the Sasaki metric",
        k == expect,
        format!("killing residual {res:.3e}"),
    ));
    v.push(Check::exact(
        "unit metric naturally reductive",
        "the normal metric is naturally reductive",
        is_naturally_reductive(f, &metric_from_params(f, MetricParams::unit())?, tol),
        String::new(),
    ));
    Ok(v)
}

fn sasakian_suite(model: &CrossModel, config: &RunConfig, tol: &ToleranceConfig) -> Result<Vec<Check>> {
    let f = &model.frame;
    let s = theorem_main_structure(f, config.radius, config.kappa)?;
    let c = classify(&s, f, tol);
    let t = tol.abs * s.metric.gram.amax().max(1.0);
    let tag = format!("r={}, kappa={}", config.radius, config.kappa);
    let claim = "the q = 1 structure with metric (κ, κ/2, κ/4, κ/2, κ/4) is Sasakian";
    let r = &c.residuals;
    let mut v = vec![
        Check::residual(format!("almost contact metric axioms ({tag})"), claim, r.axioms, t),
        Check::residual(format!("contact residual ({tag})"), claim, r.contact, t),
        Check::residual(format!("killing residual ({tag})"), claim, r.killing, t),
        Check::residual(format!("N-residual ({tag})"), claim, r.nijenhuis, t),
        Check::residual(format!("nabla phi residual ({tag})"), claim, r.nabla_phi, t),
        Check::exact(format!("Sasakian ({tag})"), claim, c.flags.sasakian, format!("{:?}", c.flags)),
        Check::exact(
            format!("Sasakian checks agree ({tag})"),
            "normality and the ∇φ identity characterize the same structures",
            c.checks_agree(),
            String::new(),
        ),
    ];
    v.extend(theorem_proof_identities(f, tol)?);
    Ok(v)
}

fn uniqueness_suite(model: &CrossModel, config: &RunConfig, tol: &ToleranceConfig) -> Result<Vec<Check>> {
    let scan = uniqueness_scan(&model.frame, config.radius, config.kappa, config.grid, tol)?;
    let pass = scan.passing();
    let claim = "the theorem metric is the only K-contact candidate";
    let theorem_passes = pass.len() == 1 && max_abs(
        pass[0].params.as_array().iter().zip(scan.theorem.as_array()).map(|(a, b)| a - b),
    ) < 1e-12;
    let m = scan.min_failing_residual();
    Ok(vec![
        Check::exact(
            format!("only the theorem point is K-contact ({} grid points)", scan.points.len()),
            claim,
            scan.unique() && theorem_passes,
            format!("{} passing", pass.len()),
        ),
        Check::exact(
            "failing points fail clearly",
            claim,
            m > 1e-3,
            format!("smallest failing residual {m:.3e}"),
        ),
    ])
}
