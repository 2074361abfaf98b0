//! Invariant Riemannian geometry of `G/H` at the origin.
//!
//! Everything is expressed in the orthonormal frame of `m̄` produced by
//! [`crate::crossmodel::restricted_frame`], so the reference inner product
//! `⟨·,·⟩_m̄` is the identity and an invariant metric is a diagonal Gram.

use nalgebra::Cholesky;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::crossmodel::{Block, RestrictedFrame};
use crate::error::{check_dim, check_positive, Error, Result};
use crate::report::max_abs;
use crate::{Matrix, ToleranceConfig, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricParams {
    pub a: f64,
    pub a_eps: f64,
    pub a_half: f64,
    pub b_eps: f64,
    pub b_half: f64,
}

impl MetricParams {
    pub fn new(a: f64, a_eps: f64, a_half: f64, b_eps: f64, b_half: f64) -> Result<Self> {
        let p = Self { a, a_eps, a_half, b_eps, b_half };
        p.validate()?;
        Ok(p)
    }

    pub fn unit() -> Self {
        Self { a: 1.0, a_eps: 1.0, a_half: 1.0, b_eps: 1.0, b_half: 1.0 }
    }

    /// Metric induced by the Sasaki metric on the sphere bundle of radius `r`.
    pub fn standard(r: f64) -> Result<Self> {
        check_positive("r", r)?;
        Self::new(1.0, 1.0, 1.0, r * r, r * r / 4.0)
    }

    /// `κ²⟨·,·⟩_a + (κ/2)⟨·,·⟩_{m_ε ⊕ k_ε} + (κ/4)⟨·,·⟩_{m_ε/2 ⊕ k_ε/2}`.
    pub fn theorem(kappa: f64) -> Result<Self> {
        check_positive("kappa", kappa)?;
        Self::new(kappa, kappa / 2.0, kappa / 4.0, kappa / 2.0, kappa / 4.0)
    }

    pub fn validate(&self) -> Result<()> {
        check_positive("a", self.a)?;
        check_positive("a_eps", self.a_eps)?;
        check_positive("a_half", self.a_half)?;
        check_positive("b_eps", self.b_eps)?;
        check_positive("b_half", self.b_half)
    }

    /// Weight of the metric on a frame block (`a²` on the axis).
    pub fn weight(&self, block: Block) -> f64 {
        match block {
            Block::A => self.a * self.a,
            Block::MEps => self.a_eps,
            Block::MHalf => self.a_half,
            Block::KEps => self.b_eps,
            Block::KHalf => self.b_half,
            Block::H => 0.0,
        }
    }

    pub fn as_array(&self) -> [f64; 5] {
        [self.a, self.a_eps, self.a_half, self.b_eps, self.b_half]
    }
}

#[derive(Debug, Clone)]
pub struct InvariantMetric {
    pub params: MetricParams,
    pub gram: Matrix,
    chol: Cholesky<f64, nalgebra::Dyn>,
}

impl InvariantMetric {
    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    pub fn inner(&self, u: &Vector, v: &Vector) -> f64 {
        (&self.gram * v).dot(u)
    }

    pub fn weight(&self, i: usize) -> f64 {
        self.gram[(i, i)]
    }

    /// Solves `G·x = rhs`.
    pub fn solve(&self, rhs: &Vector) -> Vector {
        self.chol.solve(rhs)
    }
}

pub fn metric_from_params(frame: &RestrictedFrame, params: MetricParams) -> Result<InvariantMetric> {
    params.validate()?;
    let n = frame.nbar;
    let mut gram = Matrix::zeros(n, n);
    for b in [Block::A, Block::MEps, Block::MHalf, Block::KEps, Block::KHalf] {
        let w = params.weight(b);
        for i in frame.block(b) {
            gram[(i, i)] = w;
        }
    }
    let chol = Cholesky::new(gram.clone())
        .ok_or_else(|| Error::InvalidParameter("metric Gram is not positive definite".into()))?;
    Ok(InvariantMetric { params, gram, chol })
}

fn check_mbar(frame: &RestrictedFrame, v: &Vector) -> Result<()> {
    check_dim(frame.nbar, v.len())
}

/// `𝔘(u, v)`: the m̄-vector with `2g(𝔘(u,v), w) = g([w,u]_m̄, v) + g([w,v]_m̄, u)`
/// for every `w ∈ m̄`, obtained from the Gram system.
pub fn u_map(frame: &RestrictedFrame, metric: &InvariantMetric, u: &Vector, v: &Vector) -> Result<Vector> {
    check_mbar(frame, u)?;
    check_mbar(frame, v)?;
    check_dim(frame.nbar, metric.dim())?;
    Ok(u_map_unchecked(frame, metric, u, v))
}

fn u_map_unchecked(frame: &RestrictedFrame, metric: &InvariantMetric, u: &Vector, v: &Vector) -> Vector {
    let n = frame.nbar;
    let gu = &metric.gram * u;
    let gv = &metric.gram * v;
    let mut rhs = Vector::zeros(n);
    for k in 0..n {
        let e = frame.unit(k).rows(0, n).into_owned();
        let wu = frame.bracket_mbar(&e, u);
        let wv = frame.bracket_mbar(&e, v);
        rhs[k] = 0.5 * (wu.dot(&gv) + wv.dot(&gu));
    }
    metric.solve(&rhs)
}

/// `α(u, v) = ½[u,v]_m̄ + 𝔘(u,v)`.
pub fn levi_civita_alpha(frame: &RestrictedFrame, metric: &InvariantMetric, u: &Vector, v: &Vector) -> Result<Vector> {
    let um = u_map(frame, metric, u, v)?;
    Ok(frame.bracket_mbar(u, v) * 0.5 + um)
}

/// `𝔘` and `α` tabulated on all pairs of frame vectors of `m̄`.
#[derive(Debug, Clone)]
pub struct LeviCivita {
    nbar: usize,
    u: Vec<Vector>,
    alpha: Vec<Vector>,
}

impl LeviCivita {
    pub fn new(frame: &RestrictedFrame, metric: &InvariantMetric) -> Result<Self> {
        check_dim(frame.nbar, metric.dim())?;
        let n = frame.nbar;
        let mut u = vec![Vector::zeros(n); n * n];
        let mut alpha = vec![Vector::zeros(n); n * n];
        let w: Vec<f64> = (0..n).map(|k| metric.weight(k)).collect();
        for i in 0..n {
            for j in i..n {
                // g([e_k,e_i]_m̄, e_j) = w_j f(k,i,j) in the orthonormal frame.
                let rhs = Vector::from_fn(n, |k, _| 0.5 * (w[j] * frame.f(k, i, j) + w[i] * frame.f(k, j, i)));
                let uij = metric.solve(&rhs);
                let br = Vector::from_fn(n, |k, _| frame.f(i, j, k));
                alpha[i * n + j] = &br * 0.5 + &uij;
                alpha[j * n + i] = &br * -0.5 + &uij;
                u[j * n + i] = uij.clone();
                u[i * n + j] = uij;
            }
        }
        Ok(Self { nbar: n, u, alpha })
    }

    pub fn u(&self, i: usize, j: usize) -> &Vector {
        &self.u[i * self.nbar + j]
    }

    pub fn alpha_basis(&self, i: usize, j: usize) -> &Vector {
        &self.alpha[i * self.nbar + j]
    }

    pub fn alpha(&self, u: &Vector, v: &Vector) -> Vector {
        let n = self.nbar;
        let mut out = Vector::zeros(n);
        for i in 0..n {
            if u[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                if v[j] != 0.0 {
                    out.axpy(u[i] * v[j], self.alpha_basis(i, j), 1.0);
                }
            }
        }
        out
    }
}

/// Killing criterion for invariant fields: `g(𝔘(e_i, e_j), ξ) = 0` for all
/// frame pairs. Returns the verdict and the largest such value.
pub fn is_killing(frame: &RestrictedFrame, metric: &InvariantMetric, xi: &Vector, tol: &ToleranceConfig) -> (bool, f64) {
    match LeviCivita::new(frame, metric) {
        Ok(lc) => killing_residual(&lc, metric, xi, tol),
        Err(_) => (false, f64::NAN),
    }
}

pub fn killing_residual(lc: &LeviCivita, metric: &InvariantMetric, xi: &Vector, tol: &ToleranceConfig) -> (bool, f64) {
    if xi.len() != lc.nbar {
        return (false, f64::NAN);
    }
    let gxi = &metric.gram * xi;
    let n = lc.nbar;
    let res = max_abs((0..n).flat_map(|i| (i..n).map(move |j| (i, j))).map(|(i, j)| lc.u(i, j).dot(&gxi)));
    (res <= tol.abs, res)
}

/// `𝔘 ≡ 0` on all frame pairs.
pub fn is_naturally_reductive(frame: &RestrictedFrame, metric: &InvariantMetric, tol: &ToleranceConfig) -> bool {
    match LeviCivita::new(frame, metric) {
        Ok(lc) => {
            let n = lc.nbar;
            let res = max_abs((0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| lc.u(i, j).amax()));
            res <= tol.abs
        }
        Err(_) => false,
    }
}

/// `a = a_ε = a_{ε/2} = 1`: the projection onto `G/K` is a Riemannian submersion.
pub fn is_submersion_metric(params: &MetricParams) -> bool {
    let one = |x: f64| (x - 1.0).abs() <= 1e-12;
    one(params.a) && one(params.a_eps) && one(params.a_half)
}

/// `count` parameter sets with every entry log-uniform in `[0.1, 10]`.
pub fn log_uniform_params(seed: u64, count: usize) -> Vec<MetricParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = move || 10f64.powf(rng.random_range(-1.0..=1.0));
    (0..count)
        .map(|_| MetricParams { a: draw(), a_eps: draw(), a_half: draw(), b_eps: draw(), b_half: draw() })
        .collect()
}

/// Closed-form value of `𝔘(e_i, e_j)` on frame vectors, for the pairs whose
/// value is tabulated in terms of brackets. `None` for untabulated pairs.
pub fn u_closed_form(frame: &RestrictedFrame, p: &MetricParams, i: usize, j: usize) -> Option<Vector> {
    closed_form_ordered(frame, p, i, j).or_else(|| closed_form_ordered(frame, p, j, i))
}

fn closed_form_ordered(frame: &RestrictedFrame, p: &MetricParams, i: usize, j: usize) -> Option<Vector> {
    let n = frame.nbar;
    let kind = |k: usize| Block::ALL.into_iter().find(|b| frame.block(*b).contains(&k)).unwrap_or(Block::H);
    let e = |k: usize| frame.unit(k).rows(0, n).into_owned();
    let br = |a: usize, b: usize| frame.bracket_mbar(&e(a), &e(b));
    let a2 = p.a * p.a;
    // Position inside its block, to pair ξ^j with ζ^j.
    let slot = |k: usize| k - frame.block(kind(k)).start;
    let (bi, bj) = (kind(i), kind(j));
    use Block::*;
    let v = match (bi, bj) {
        (A, A) | (MEps, MEps) | (KEps, KEps) => Vector::zeros(n),
        (A, MEps) => e(frame.zeta_eps_index(slot(j))) * ((a2 - p.a_eps) / (2.0 * p.b_eps)),
        (A, KEps) => e(frame.xi_eps_index(slot(j))) * ((p.b_eps - a2) / (2.0 * p.a_eps)),
        (A, MHalf) => e(frame.zeta_half_index(slot(j))) * ((a2 - p.a_half) / (4.0 * p.b_half)),
        (A, KHalf) => e(frame.xi_half_index(slot(j))) * ((p.b_half - a2) / (4.0 * p.a_half)),
        (MEps, KEps) => {
            let d = if slot(i) == slot(j) { 1.0 } else { 0.0 };
            e(0) * (d * (p.a_eps - p.b_eps) / (2.0 * a2))
        }
        (MEps, MHalf) => br(i, j) * ((p.a_half - p.a_eps) / (2.0 * p.b_half)),
        (MEps, KHalf) => br(i, j) * ((p.b_half - p.a_eps) / (2.0 * p.a_half)),
        (MHalf, KEps) => br(i, j) * ((p.b_eps - p.a_half) / (2.0 * p.a_half)),
        (KEps, KHalf) => br(i, j) * ((p.b_half - p.b_eps) / (2.0 * p.b_half)),
        (MHalf, KHalf) => {
            let d = if slot(i) == slot(j) { 1.0 } else { 0.0 };
            let mut proj = Vector::zeros(n);
            let b = br(i, j);
            for k in frame.block(MEps) {
                proj[k] = b[k];
            }
            (e(0) * (d / (2.0 * a2)) - proj / p.a_eps) * ((p.a_half - p.b_half) / 2.0)
        }
        _ => return None,
    };
    Some(v)
}
