//! Invariant almost contact metric structures on `T_r(G/K) = G/H`, evaluated
//! at the origin in the frame of `m̄`.
//!
//! A structure is stored as `(φ, char, η, g)` with `char = X/a` and
//! `η = a⟨X,·⟩`, where `a = a(r)` is the square root of the metric weight on
//! the axis. Contact means `Φ(u,v) = g(u, φv)` equals `dη`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::crossmodel::{Block, RestrictedFrame, SpaceId};
use crate::error::{check_positive, Error, Result};
use crate::homgeo::{killing_residual, metric_from_params, InvariantMetric, LeviCivita, MetricParams};
use crate::report::{max_abs, Check};
use crate::{Matrix, ToleranceConfig, Vector};

#[derive(Debug, Clone)]
pub struct AlmostContactStructure {
    pub space: SpaceId,
    pub r: f64,
    pub phi: Matrix,
    pub char: Vector,
    pub eta: Vector,
    pub metric: InvariantMetric,
    /// `a(r)`: `g(X,X) = a²`, `char = X/a`.
    pub a: f64,
    pub q_eps: f64,
    pub q_half: f64,
}

/// How `b_λ` is chosen in [`phi_q_structure`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhiQMode {
    /// Use the parameters as given.
    Given,
    /// Overwrite `b_λ = q_λ² a_λ`, the metric induced by a Hermitian pair.
    Induced,
}

fn phi_q_matrix(frame: &RestrictedFrame, q_eps: f64, q_half: f64) -> Matrix {
    let n = frame.nbar;
    let mut phi = Matrix::zeros(n, n);
    for (count, q, xi, zeta) in [
        (frame.m_eps, q_eps, frame.block(Block::MEps).start, frame.block(Block::KEps).start),
        (frame.m_half, q_half, frame.block(Block::MHalf).start, frame.block(Block::KHalf).start),
    ] {
        for s in 0..count {
            // φξ = −(1/q)ζ, φζ = qξ; column j is φ(e_j).
            phi[(zeta + s, xi + s)] = -1.0 / q;
            phi[(xi + s, zeta + s)] = q;
        }
    }
    phi
}

fn assemble(frame: &RestrictedFrame, r: f64, phi: Matrix, metric: InvariantMetric, q_eps: f64, q_half: f64) -> AlmostContactStructure {
    let n = frame.nbar;
    let a = metric.params.a;
    let mut char = Vector::zeros(n);
    char[0] = 1.0 / a;
    let mut eta = Vector::zeros(n);
    eta[0] = a;
    AlmostContactStructure { space: frame.space, r, phi, char, eta, metric, a, q_eps, q_half }
}

/// `(φ^q, X/a, a⟨X,·⟩, g)` with `a = params.a`.
pub fn phi_q_structure(
    frame: &RestrictedFrame,
    r: f64,
    q_eps: f64,
    q_half: f64,
    params: MetricParams,
    mode: PhiQMode,
) -> Result<AlmostContactStructure> {
    check_positive("r", r)?;
    check_positive("q_eps", q_eps)?;
    check_positive("q_half", q_half)?;
    let mut params = params;
    if mode == PhiQMode::Induced {
        params.b_eps = q_eps * q_eps * params.a_eps;
        params.b_half = q_half * q_half * params.a_half;
    }
    let metric = metric_from_params(frame, params)?;
    Ok(assemble(frame, r, phi_q_matrix(frame, q_eps, q_half), metric, q_eps, q_half))
}

/// Structure induced on the sphere bundle of radius `r` by the Sasaki metric.
pub fn standard_structure(frame: &RestrictedFrame, r: f64) -> Result<AlmostContactStructure> {
    check_positive("r", r)?;
    phi_q_structure(frame, r, r, r / 2.0, MetricParams::standard(r)?, PhiQMode::Given)
}

/// `(φ, 2r·X, η/(2r), g^S/(4r²))`.
pub fn rectified_structure(frame: &RestrictedFrame, r: f64) -> Result<AlmostContactStructure> {
    check_positive("r", r)?;
    let s = 1.0 / (4.0 * r * r);
    let p = MetricParams::standard(r)?;
    let params = MetricParams::new(1.0 / (2.0 * r), p.a_eps * s, p.a_half * s, p.b_eps * s, p.b_half * s)?;
    phi_q_structure(frame, r, r, r / 2.0, params, PhiQMode::Given)
}

/// `q ≡ 1`, `char = X/κ`, metric `(κ, κ/2, κ/4, κ/2, κ/4)`.
pub fn theorem_main_structure(frame: &RestrictedFrame, r: f64, kappa: f64) -> Result<AlmostContactStructure> {
    check_positive("r", r)?;
    phi_q_structure(frame, r, 1.0, 1.0, MetricParams::theorem(kappa)?, PhiQMode::Given)
}

impl AlmostContactStructure {
    pub fn dim(&self) -> usize {
        self.phi.nrows()
    }

    pub fn eta_of(&self, v: &Vector) -> f64 {
        self.eta.dot(v)
    }

    pub fn apply_phi(&self, v: &Vector) -> Vector {
        &self.phi * v
    }

    pub fn params(&self) -> MetricParams {
        self.metric.params
    }
}

/// `dη(u,v) = −(a/2)⟨X, [u,v]_m̄⟩` for the structure's `η = a⟨X,·⟩`.
pub fn d_eta(frame: &RestrictedFrame, s: &AlmostContactStructure, u: &Vector, v: &Vector) -> f64 {
    -0.5 * s.a * frame.bracket_mbar(u, v)[0]
}

/// `Φ(u,v) = g(u, φv)`.
pub fn fundamental_two_form(s: &AlmostContactStructure, u: &Vector, v: &Vector) -> f64 {
    s.metric.inner(u, &s.apply_phi(v))
}

/// `N(u,v) = φ²[u,v] + [φu,φv] − φ[φu,v] − φ[u,φv] + 2dη(u,v)·char`, all
/// brackets projected to `m̄`.
pub fn nijenhuis(frame: &RestrictedFrame, s: &AlmostContactStructure, u: &Vector, v: &Vector) -> Vector {
    let (pu, pv) = (s.apply_phi(u), s.apply_phi(v));
    let uv = frame.bracket_mbar(u, v);
    let mut out = s.apply_phi(&s.apply_phi(&uv));
    out += frame.bracket_mbar(&pu, &pv);
    out -= s.apply_phi(&frame.bracket_mbar(&pu, v));
    out -= s.apply_phi(&frame.bracket_mbar(u, &pv));
    out.axpy(2.0 * d_eta(frame, s, u, v), &s.char, 1.0);
    out
}

fn basis(n: usize) -> Vec<Vector> {
    (0..n)
        .map(|i| {
            let mut e = Vector::zeros(n);
            e[i] = 1.0;
            e
        })
        .collect()
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (0..n).map(move |j| (i, j)))
}

/// Largest deviation from `φ² = −I + η⊗char`, `η(char) = 1`, `φ(char) = 0`,
/// `η∘φ = 0` and `g(φu,φv) = g(u,v) − η(u)η(v)`.
pub fn axiom_residual(s: &AlmostContactStructure) -> f64 {
    let n = s.dim();
    let eta_char = &s.char * s.eta.transpose();
    let id = Matrix::identity(n, n);
    let r1 = (&s.phi * &s.phi + &id - &eta_char).amax();
    let r2 = (s.eta.dot(&s.char) - 1.0).abs();
    let r3 = s.apply_phi(&s.char).amax();
    let r4 = (s.phi.transpose() * &s.eta).amax();
    let r5 = (s.phi.transpose() * &s.metric.gram * &s.phi - &s.metric.gram + &s.eta * s.eta.transpose()).amax();
    max_abs([r1, r2, r3, r4, r5])
}

/// `max |Φ(e_i,e_j) − dη(e_i,e_j)|`.
pub fn contact_residual(frame: &RestrictedFrame, s: &AlmostContactStructure) -> f64 {
    let e = basis(s.dim());
    let phi2 = &s.metric.gram * &s.phi;
    max_abs(pairs(s.dim()).map(|(i, j)| phi2[(i, j)] - d_eta(frame, s, &e[i], &e[j])))
}

pub fn nijenhuis_residual(frame: &RestrictedFrame, s: &AlmostContactStructure) -> f64 {
    let e = basis(s.dim());
    let n = s.dim();
    max_abs((0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| nijenhuis(frame, s, &e[i], &e[j]).amax()))
}

/// `max ‖α(u,φv) − φα(u,v) − g(u,v)char + η(v)u‖` over frame pairs, i.e. the
/// defect of `(∇_uφ)v = g(u,v)ξ − η(v)u`.
pub fn nabla_phi_residual(s: &AlmostContactStructure, lc: &LeviCivita) -> f64 {
    let e = basis(s.dim());
    max_abs(pairs(s.dim()).map(|(i, j)| {
        let pv = s.apply_phi(&e[j]);
        let mut d = lc.alpha(&e[i], &pv) - s.apply_phi(lc.alpha_basis(i, j));
        d.axpy(-s.metric.gram[(i, j)], &s.char, 1.0);
        d.axpy(s.eta[j], &e[i], 1.0);
        d.amax()
    }))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Residuals {
    pub axioms: f64,
    pub contact: f64,
    pub killing: f64,
    pub nijenhuis: f64,
    pub nabla_phi: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    pub almost_contact_metric: bool,
    pub contact_metric: bool,
    pub k_contact: bool,
    pub sasakian: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StructureClass {
    pub flags: Flags,
    pub residuals: Residuals,
    /// Normality (`N ≡ 0` on a contact metric structure).
    pub normal_check: bool,
    /// The `∇φ` identity.
    pub nabla_check: bool,
}

impl StructureClass {
    /// The two Sasakian tests give the same answer.
    pub fn checks_agree(&self) -> bool {
        self.normal_check == self.nabla_check
    }
}

/// Residuals are compared against `tol.abs · max(1, largest metric weight)`.
pub fn classify(s: &AlmostContactStructure, frame: &RestrictedFrame, tol: &ToleranceConfig) -> StructureClass {
    let scale = s.metric.gram.amax().max(1.0);
    let t = tol.abs * scale;
    let axioms = axiom_residual(s);
    let contact = contact_residual(frame, s);
    let nij = nijenhuis_residual(frame, s);
    let (killing, nabla) = match LeviCivita::new(frame, &s.metric) {
        Ok(lc) => {
            let (_, k) = killing_residual(&lc, &s.metric, &s.char, tol);
            (k, nabla_phi_residual(s, &lc))
        }
        Err(_) => (f64::NAN, f64::NAN),
    };
    let acm = axioms <= t;
    let cm = acm && contact <= t;
    let kc = cm && killing <= t;
    let normal_check = cm && nij <= t;
    let nabla_check = acm && nabla <= t;
    StructureClass {
        flags: Flags { almost_contact_metric: acm, contact_metric: cm, k_contact: kc, sasakian: normal_check && nabla_check },
        residuals: Residuals { axioms, contact, killing, nijenhuis: nij, nabla_phi: nabla },
        normal_check,
        nabla_check,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ContactReport {
    pub space: String,
    pub r: f64,
    pub kappa: f64,
    pub params: MetricParams,
    pub flags: Flags,
    pub residuals: Residuals,
}

impl ContactReport {
    pub fn new(s: &AlmostContactStructure, class: &StructureClass) -> Self {
        Self {
            space: s.space.to_string(),
            r: s.r,
            kappa: s.a,
            params: s.params(),
            flags: class.flags,
            residuals: class.residuals,
        }
    }
}

/// The φ forced by `Φ = dη` for a candidate metric: `φ = G⁻¹D`.
pub fn phi_from_d_eta(frame: &RestrictedFrame, params: MetricParams, r: f64) -> Result<AlmostContactStructure> {
    let metric = metric_from_params(frame, params)?;
    let n = frame.nbar;
    let a = params.a;
    let e = basis(n);
    let d = Matrix::from_fn(n, n, |i, j| -0.5 * a * frame.bracket_mbar(&e[i], &e[j])[0]);
    let mut phi = Matrix::zeros(n, n);
    for j in 0..n {
        phi.set_column(j, &metric.solve(&d.column(j).into_owned()));
    }
    Ok(assemble(frame, r, phi, metric, f64::NAN, f64::NAN))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanPoint {
    pub params: MetricParams,
    pub k_contact: bool,
    /// `max(axioms, killing)`: zero exactly on K-contact candidates.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniquenessScan {
    pub space: String,
    pub r: f64,
    pub kappa: f64,
    pub theorem: MetricParams,
    pub points: Vec<ScanPoint>,
}

impl UniquenessScan {
    pub fn passing(&self) -> Vec<&ScanPoint> {
        self.points.iter().filter(|p| p.k_contact).collect()
    }

    /// Only the theorem point passes and it does pass.
    pub fn unique(&self) -> bool {
        let pass = self.passing();
        pass.len() == 1 && same_params(&pass[0].params, &self.theorem)
    }

    /// Smallest residual among the failing points.
    pub fn min_failing_residual(&self) -> f64 {
        self.points.iter().filter(|p| !p.k_contact).map(|p| p.residual).fold(f64::INFINITY, f64::min)
    }
}

fn same_params(a: &MetricParams, b: &MetricParams) -> bool {
    a.as_array().iter().zip(b.as_array()).all(|(x, y)| (x - y).abs() <= 1e-12 * y.abs().max(1.0))
}

/// Log-grid factors `2^k`, `k = −(g−1)/2 … (g−1)/2` (for even `g` the grid is
/// shifted so that `1` is still included).
fn grid_factors(grid: usize) -> Vec<f64> {
    let lo = -((grid as i64 - 1) / 2);
    (0..grid as i64).map(|k| 2f64.powi((lo + k) as i32)).collect()
}

/// With `a = κ` fixed, every point of a log-grid around `(κ/2, κ/4, κ/2, κ/4)`
/// gets the φ forced by `Φ = dη` and is tested for the almost contact metric
/// axioms and the Killing property of the characteristic field.
pub fn uniqueness_scan(frame: &RestrictedFrame, r: f64, kappa: f64, grid: usize, tol: &ToleranceConfig) -> Result<UniquenessScan> {
    check_positive("r", r)?;
    check_positive("kappa", kappa)?;
    if grid < 3 {
        return Err(Error::InvalidParameter(format!("grid must have at least 3 points per axis, got {grid}")));
    }
    let theorem = MetricParams::theorem(kappa)?;
    let f = grid_factors(grid);
    let half = frame.m_half > 0;
    let half_axis: Vec<f64> = if half { f.clone() } else { vec![1.0] };
    let mut candidates = Vec::new();
    for &fa in &f {
        for &fh in &half_axis {
            for &fb in &f {
                for &fbh in &half_axis {
                    candidates.push(MetricParams {
                        a: kappa,
                        a_eps: theorem.a_eps * fa,
                        a_half: theorem.a_half * fh,
                        b_eps: theorem.b_eps * fb,
                        b_half: theorem.b_half * fbh,
                    });
                }
            }
        }
    }
    // Grid points are independent; the ordered collect keeps the report deterministic.
    let points = candidates
        .into_par_iter()
        .map(|params| -> Result<ScanPoint> {
            let s = phi_from_d_eta(frame, params, r)?;
            let t = tol.abs * s.metric.gram.amax().max(1.0);
            let axioms = axiom_residual(&s);
            let lc = LeviCivita::new(frame, &s.metric)?;
            let (_, killing) = killing_residual(&lc, &s.metric, &s.char, tol);
            let residual = max_abs([axioms, killing]);
            Ok(ScanPoint { params, k_contact: residual <= t, residual })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(UniquenessScan { space: frame.space.to_string(), r, kappa, theorem, points })
}

/// Standard and rectified structures over a list of radii.
pub fn tashiro_suite(frame: &RestrictedFrame, radii: &[f64], tol: &ToleranceConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let sphere_like = frame.m_half == 0;
    for &r in radii {
        let is_half = (r - 0.5).abs() < 1e-12;
        let std = standard_structure(frame, r)?;
        let c = classify(&std, frame, tol);
        let name = if is_half { "standard contact at r=1/2".to_string() } else { format!("standard not contact at r={r}") };
        checks.push(
            Check::exact(
                name,
                "the standard structure is contact metric exactly at radius 1/2",
                c.flags.contact_metric == is_half,
                format!("contact residual {:.3e}", c.residuals.contact),
            ),
        );
        let rect = rectified_structure(frame, r)?;
        let c = classify(&rect, frame, tol);
        checks.push(Check::exact(
            format!("rectified contact at r={r}"),
            "the rectified structure is contact metric for every radius",
            c.flags.contact_metric,
            format!("contact residual {:.3e}", c.residuals.contact),
        ));
        let expect_k = sphere_like && (r - 1.0).abs() < 1e-12;
        checks.push(Check::exact(
            format!("rectified K-contact at r={r}: {expect_k}"),
            "the rectified structure is K-contact iff r = 1 and there is no ε/2 root",
            c.flags.k_contact == expect_k,
            format!("killing residual {:.3e}", c.residuals.killing),
        ));
        if c.flags.k_contact {
            checks.push(Check::exact(
                format!("rectified Sasakian at r={r}"),
                "when K-contact, the rectified structure is Sasakian",
                c.flags.sasakian,
                format!("nijenhuis {:.3e}, nabla phi {:.3e}", c.residuals.nijenhuis, c.residuals.nabla_phi),
            ));
        }
        checks.push(Check::exact(
            format!("Sasakian checks agree (standard and rectified, r={r})"),
            "normality and the ∇φ identity characterize the same structures",
            c.checks_agree() && classify(&std, frame, tol).checks_agree(),
            String::new(),
        ));
    }
    Ok(checks)
}

/// Identities used to show normality of the `q ≡ 1` structure, checked on
/// frame vectors.
pub fn theorem_proof_identities(frame: &RestrictedFrame, tol: &ToleranceConfig) -> Result<Vec<Check>> {
    let s = theorem_main_structure(frame, 1.0, 1.0)?;
    let n = frame.nbar;
    let e = basis(n);
    let t = tol.abs;
    let eps: Vec<usize> = frame.block(Block::MEps).chain(frame.block(Block::KEps)).collect();
    let half: Vec<usize> = frame.block(Block::MHalf).chain(frame.block(Block::KHalf)).collect();
    let m_half: Vec<usize> = frame.block(Block::MHalf).collect();
    let phi = |v: &Vector| s.apply_phi(v);
    let br = |u: &Vector, v: &Vector| frame.bracket_mbar(u, v);
    let x = &e[0];
    let restrict = |v: &Vector, idx: &[usize]| Vector::from_fn(n, |k, _| if idx.contains(&k) { v[k] } else { 0.0 });

    // φ = (1/λ) ad_X on m_λ ⊕ k_λ, hence ad_X φ = φ ad_X.
    let varphiad = max_abs(eps.iter().chain(half.iter()).map(|&i| {
        let lam = frame.lambda_of(i).unwrap_or(1.0);
        (phi(&e[i]) - br(x, &e[i]) / lam).amax()
    }));
    let commute = max_abs((0..n).map(|i| (br(x, &phi(&e[i])) - phi(&br(x, &e[i]))).amax()));
    let mut sor: f64 = 0.0;
    for &i in &eps {
        for &j in &eps {
            let (u, v) = (&e[i], &e[j]);
            sor = sor.max((br(&phi(u), v) + br(u, &phi(v))).amax());
            sor = sor.max((br(&phi(u), &phi(v)) - br(u, v)).amax());
        }
    }
    let mut sorpresa: f64 = 0.0;
    for &i in &half {
        for &j in &half {
            let (u, v) = (&e[i], &e[j]);
            sorpresa = sorpresa.max((restrict(&br(u, v), &eps) + restrict(&br(&phi(u), &phi(v)), &eps)).amax());
            sorpresa = sorpresa.max((restrict(&br(&phi(u), v), &eps) - restrict(&br(u, &phi(v)), &eps)).amax());
        }
    }
    let mut s1: f64 = 0.0;
    for &i in &eps {
        for &j in &m_half {
            let (u, v) = (&e[i], &e[j]);
            s1 = s1.max((frame.bracket(&phi(u), &phi(v)) - frame.bracket(u, v)).amax());
        }
    }
    let nx = max_abs((0..n).map(|i| nijenhuis(frame, &s, x, &e[i]).amax()));
    Ok(vec![
        Check::residual("phi = ad_X / lambda on eigenspaces", "φ¹ restricted to m_λ ⊕ k_λ is ad_X/λ_ℝ(X)", varphiad, t),
        Check::residual("ad_X commutes with phi", "ad_X ∘ φ¹ = φ¹ ∘ ad_X", commute, t),
        Check::residual("eps-eps bracket identities", "[φu,v] + [u,φv] = 0 and [φu,φv] = [u,v] on m_ε ⊕ k_ε", sor, t),
        Check::residual(
            "half-half bracket identities",
            "ε-components: [u,v] = −[φu,φv] and [φu,v] = [u,φv] on m_ε/2 ⊕ k_ε/2",
            sorpresa,
            t,
        ),
        Check::residual("[phi u, phi v] = [u, v] for eps x m_half", "[φu,φv] = [u,v] for u ∈ m_ε ⊕ k_ε, v ∈ m_ε/2", s1, t),
        Check::residual("N(X, u) = 0", "the Nijenhuis tensor vanishes on the axis", nx, t),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crossmodel::CrossModel;

    fn frame(s: SpaceId) -> RestrictedFrame {
        CrossModel::build(s, &ToleranceConfig::default()).unwrap().frame
    }

    #[test]
    fn standard_structure_at_unit_radius_is_reference_metric_on_sphere() {
        let f = frame(SpaceId::sphere(3).unwrap());
        let s = standard_structure(&f, 1.0).unwrap();
        assert_eq!(s.metric.gram, Matrix::identity(f.nbar, f.nbar));
        assert!(axiom_residual(&s) < 1e-14);
    }

    #[test]
    fn standard_params_at_radius_two() {
        let f = frame(SpaceId::complex_projective(2).unwrap());
        let s = standard_structure(&f, 2.0).unwrap();
        assert_eq!(s.params().b_eps, 4.0);
        assert_eq!(s.params().b_half, 1.0);
    }

    #[test]
    fn induced_mode_sets_b() {
        let f = frame(SpaceId::complex_projective(2).unwrap());
        let s = phi_q_structure(&f, 1.0, 2.0, 2.0, MetricParams::unit(), PhiQMode::Induced).unwrap();
        assert_eq!(s.params().b_eps, 4.0);
        assert_eq!(s.params().b_half, 4.0);
        assert!(axiom_residual(&s) < 1e-14);
    }

    #[test]
    fn d_eta_values() {
        let f = frame(SpaceId::complex_projective(2).unwrap());
        let s = standard_structure(&f, 1.0).unwrap();
        let e = basis(f.nbar);
        for i in 0..f.nbar {
            assert!(d_eta(&f, &s, &e[0], &e[i]).abs() < 1e-14);
        }
        let de = d_eta(&f, &s, &e[f.xi_eps_index(0)], &e[f.zeta_eps_index(0)]);
        let dh = d_eta(&f, &s, &e[f.xi_half_index(0)], &e[f.zeta_half_index(0)]);
        assert!((de - 0.5).abs() < 1e-12);
        assert!((dh - 0.25).abs() < 1e-12);
    }

    #[test]
    fn fundamental_form_values() {
        let f = frame(SpaceId::quaternionic_projective(2).unwrap());
        let s = phi_q_structure(&f, 0.7, 1.3, 0.4, MetricParams::new(1.1, 0.9, 2.0, 1.0, 1.0).unwrap(), PhiQMode::Induced)
            .unwrap();
        let e = basis(f.nbar);
        let v = fundamental_two_form(&s, &e[f.xi_eps_index(1)], &e[f.zeta_eps_index(1)]);
        assert!((v - 1.3 * 0.9).abs() < 1e-12);
        let v = fundamental_two_form(&s, &e[f.xi_half_index(2)], &e[f.zeta_half_index(2)]);
        assert!((v - 0.4 * 2.0).abs() < 1e-12);
        for i in 0..f.nbar {
            assert!(fundamental_two_form(&s, &e[0], &e[i]).abs() < 1e-14);
            for j in 0..f.nbar {
                let a = fundamental_two_form(&s, &e[i], &e[j]) + fundamental_two_form(&s, &e[j], &e[i]);
                assert!(a.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn standard_contact_only_at_half() {
        let tol = ToleranceConfig::default();
        let f = frame(SpaceId::complex_projective(2).unwrap());
        let c = classify(&standard_structure(&f, 0.5).unwrap(), &f, &tol);
        assert!(c.flags.contact_metric);
        assert!(!c.flags.k_contact);
        assert!(!c.flags.sasakian);
        assert!(c.checks_agree());
        let c = classify(&standard_structure(&f, 1.0).unwrap(), &f, &tol);
        assert!(c.flags.almost_contact_metric && !c.flags.contact_metric);
    }

    #[test]
    fn theorem_structure_is_sasakian() {
        let tol = ToleranceConfig::default();
        for sp in [SpaceId::sphere(3).unwrap(), SpaceId::complex_projective(2).unwrap()] {
            let f = frame(sp);
            let c = classify(&theorem_main_structure(&f, 1.0, 1.0).unwrap(), &f, &tol);
            assert!(c.flags.sasakian, "{sp}: {c:?}");
            assert!(c.residuals.nijenhuis < 1e-9 && c.residuals.nabla_phi < 1e-9);
        }
    }

    #[test]
    fn rectified_hp1_is_k_contact_at_one() {
        // ℍP¹ has no ε/2 root, so the rectified structure behaves as on S⁴.
        let tol = ToleranceConfig::default();
        let f = frame(SpaceId::quaternionic_projective(1).unwrap());
        assert_eq!(f.m_half, 0);
        let c = classify(&rectified_structure(&f, 1.0).unwrap(), &f, &tol);
        assert!(c.flags.k_contact && c.flags.sasakian, "{c:?}");
    }

    #[test]
    fn grid_factors_centered() {
        assert_eq!(grid_factors(5), vec![0.25, 0.5, 1.0, 2.0, 4.0]);
        assert_eq!(grid_factors(3), vec![0.5, 1.0, 2.0]);
        assert!(grid_factors(4).contains(&1.0));
    }

    #[test]
    fn proof_identities_hold() {
        let tol = ToleranceConfig::default();
        for sp in [SpaceId::complex_projective(2).unwrap(), SpaceId::cayley_plane()] {
            for c in theorem_proof_identities(&frame(sp), &tol).unwrap() {
                assert!(c.passed, "{sp}: {c:?}");
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let f = frame(SpaceId::sphere(2).unwrap());
        assert!(standard_structure(&f, 0.0).is_err());
        assert!(theorem_main_structure(&f, 1.0, -1.0).is_err());
        assert!(phi_q_structure(&f, 1.0, 0.0, 1.0, MetricParams::unit(), PhiQMode::Given).is_err());
        assert!(uniqueness_scan(&f, 1.0, 1.0, 2, &ToleranceConfig::default()).is_err());
    }
}
