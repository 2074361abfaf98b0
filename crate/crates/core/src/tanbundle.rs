//! The punctured tangent bundle as `G/H × ℝ⁺`, at the points `(o_H, t)`.
//!
//! Tangent vectors are `m̄ ⊕ ℝ∂/∂t`: the `m̄` frame coordinates followed by
//! one radial slot at index `nbar`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::contact::{phi_q_structure, AlmostContactStructure, PhiQMode};
use crate::crossmodel::{Block, RestrictedFrame};
use crate::error::{check_dim, check_positive, Error, Result};
use crate::homgeo::MetricParams;
use crate::{Matrix, ToleranceConfig, Vector};

type Evaluator = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A positive function of the radius. Either an opaque evaluator or a table
/// with log-spaced abscissae, interpolated linearly in `(ln t, ln f)`.
#[derive(Clone)]
pub enum RadialFunction {
    Closure(Evaluator),
    Table { ts: Vec<f64>, values: Vec<f64> },
}

impl fmt::Debug for RadialFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RadialFunction::Closure(_) => f.write_str("RadialFunction::Closure"),
            RadialFunction::Table { ts, .. } => write!(f, "RadialFunction::Table({} samples)", ts.len()),
        }
    }
}

impl RadialFunction {
    pub fn new<F: Fn(f64) -> f64 + Send + Sync + 'static>(f: F) -> Self {
        RadialFunction::Closure(Arc::new(f))
    }

    pub fn constant(c: f64) -> Self {
        Self::new(move |_| c)
    }

    pub fn identity() -> Self {
        Self::new(|t| t)
    }

    /// Samples `f` at `count` log-spaced points of `[t_min, t_max]`.
    pub fn tabulate<F: Fn(f64) -> f64>(f: F, t_min: f64, t_max: f64, count: usize) -> Result<Self> {
        check_positive("t_min", t_min)?;
        if !(t_max > t_min) || count < 2 {
            return Err(Error::InvalidParameter("table needs t_max > t_min and at least 2 samples".into()));
        }
        let ts = log_space(t_min, t_max, count);
        let values: Vec<f64> = ts.iter().map(|&t| f(t)).collect();
        Self::from_table(ts, values)
    }

    pub fn from_table(ts: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        check_dim(ts.len(), values.len())?;
        if ts.len() < 2 || ts.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidParameter("table abscissae must be increasing".into()));
        }
        for (&t, &v) in ts.iter().zip(&values) {
            check_positive("table abscissa", t)?;
            check_positive("table value", v)?;
        }
        Ok(RadialFunction::Table { ts, values })
    }

    /// Value at `t`; errors unless the result is positive and finite.
    pub fn eval(&self, t: f64) -> Result<f64> {
        check_positive("t", t)?;
        let v = match self {
            RadialFunction::Closure(f) => f(t),
            RadialFunction::Table { ts, values } => {
                let (lo, hi) = (ts[0], ts[ts.len() - 1]);
                if t < lo || t > hi {
                    return Err(Error::InvalidParameter(format!("t = {t} outside table range [{lo}, {hi}]")));
                }
                let k = ts.partition_point(|&x| x <= t).clamp(1, ts.len() - 1);
                let (t0, t1) = (ts[k - 1].ln(), ts[k].ln());
                let (v0, v1) = (values[k - 1].ln(), values[k].ln());
                let s = (t.ln() - t0) / (t1 - t0);
                (v0 + s * (v1 - v0)).exp()
            }
        };
        if v.is_finite() && v > 0.0 {
            Ok(v)
        } else {
            Err(Error::InvalidParameter(format!("radial function is not positive at t = {t}: {v}")))
        }
    }
}

pub fn log_space(t_min: f64, t_max: f64, count: usize) -> Vec<f64> {
    let (a, b) = (t_min.ln(), t_max.ln());
    let mut v: Vec<f64> = (0..count).map(|k| (a + (b - a) * k as f64 / (count - 1) as f64).exp()).collect();
    v[0] = t_min;
    v[count - 1] = t_max;
    v
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmbientPoint {
    pub t: f64,
}

impl AmbientPoint {
    pub fn new(t: f64) -> Result<Self> {
        check_positive("t", t)?;
        Ok(Self { t })
    }
}

/// `λ_ℝ(t)` for `ε` and `ε/2`.
fn lambdas(t: f64) -> (f64, f64) {
    (t, t / 2.0)
}

/// `(q_ε(t), q_{ε/2}(t)) = (q(t), q(t/2))`.
pub fn q_values(q: &RadialFunction, t: f64) -> Result<(f64, f64)> {
    let (le, lh) = lambdas(t);
    Ok((q.eval(le)?, q.eval(lh)?))
}

/// Matrix of `J^q_t` on `m̄ ⊕ ℝ∂/∂t`.
pub fn jq_matrix(frame: &RestrictedFrame, q: &RadialFunction, t: f64) -> Result<Matrix> {
    check_positive("t", t)?;
    let n = frame.nbar;
    let (qe, qh) = q_values(q, t)?;
    let mut j = Matrix::zeros(n + 1, n + 1);
    j[(n, 0)] = 1.0;
    j[(0, n)] = -1.0;
    for (count, qq, xi, zeta) in [
        (frame.m_eps, qe, frame.block(Block::MEps).start, frame.block(Block::KEps).start),
        (frame.m_half, qh, frame.block(Block::MHalf).start, frame.block(Block::KHalf).start),
    ] {
        for s in 0..count {
            j[(zeta + s, xi + s)] = -1.0 / qq;
            j[(xi + s, zeta + s)] = qq;
        }
    }
    Ok(j)
}

pub fn jq_apply(frame: &RestrictedFrame, q: &RadialFunction, t: f64, v: &Vector) -> Result<Vector> {
    check_dim(frame.nbar + 1, v.len())?;
    Ok(jq_matrix(frame, q, t)? * v)
}

/// The six radial functions of a metric on `G/H × ℝ⁺` with `∂/∂t` normal to
/// the slices.
#[derive(Debug, Clone)]
pub struct RadialFns {
    pub a: RadialFunction,
    pub b: RadialFunction,
    pub a_eps: RadialFunction,
    pub a_half: RadialFunction,
    pub b_eps: RadialFunction,
    pub b_half: RadialFunction,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialValues {
    pub a: f64,
    pub b: f64,
    pub a_eps: f64,
    pub a_half: f64,
    pub b_eps: f64,
    pub b_half: f64,
}

impl RadialFns {
    pub fn unit() -> Self {
        let one = RadialFunction::constant(1.0);
        Self { a: one.clone(), b: one.clone(), a_eps: one.clone(), a_half: one.clone(), b_eps: one.clone(), b_half: one }
    }

    /// The Sasaki metric: `a = b = a_λ = 1`, `b_λ = λ_ℝ(t)²`.
    pub fn sasaki() -> Self {
        let one = RadialFunction::constant(1.0);
        Self {
            a: one.clone(),
            b: one.clone(),
            a_eps: one.clone(),
            a_half: one,
            b_eps: RadialFunction::new(|t| t * t),
            b_half: RadialFunction::new(|t| t * t / 4.0),
        }
    }

    /// `a = b = f`, `a_λ = b_λ = f(t)λ_ℝ(t)/(2t)`.
    pub fn from_f(f: RadialFunction) -> Self {
        let fe = f.clone();
        let fh = f.clone();
        let eps = RadialFunction::new(move |t| fe.eval(t).unwrap_or(f64::NAN) / 2.0);
        let half = RadialFunction::new(move |t| fh.eval(t).unwrap_or(f64::NAN) / 4.0);
        Self { a: f.clone(), b: f, a_eps: eps.clone(), a_half: half.clone(), b_eps: eps, b_half: half }
    }

    pub fn at(&self, t: f64) -> Result<RadialValues> {
        Ok(RadialValues {
            a: self.a.eval(t)?,
            b: self.b.eval(t)?,
            a_eps: self.a_eps.eval(t)?,
            a_half: self.a_half.eval(t)?,
            b_eps: self.b_eps.eval(t)?,
            b_half: self.b_half.eval(t)?,
        })
    }
}

/// Block-diagonal Gram on `m̄ ⊕ ℝ∂/∂t` at `(o_H, t)`.
pub fn ambient_metric(frame: &RestrictedFrame, fns: &RadialFns, t: f64) -> Result<Matrix> {
    let v = fns.at(t)?;
    let n = frame.nbar;
    let mut g = Matrix::zeros(n + 1, n + 1);
    g[(0, 0)] = v.a * v.a;
    g[(n, n)] = v.b * v.b;
    for (b, w) in [(Block::MEps, v.a_eps), (Block::MHalf, v.a_half), (Block::KEps, v.b_eps), (Block::KHalf, v.b_half)] {
        for i in frame.block(b) {
            g[(i, i)] = w;
        }
    }
    Ok(g)
}

/// `a = b` and `b_λ = q_λ² a_λ` at `t`, compared with relative tolerance.
/// The `ε/2` condition is skipped when `has_half` is false.
pub fn is_hermitian(fns: &RadialFns, q: &RadialFunction, t: f64, has_half: bool, tol: &ToleranceConfig) -> Result<bool> {
    let v = fns.at(t)?;
    let (qe, qh) = q_values(q, t)?;
    let mut ok = tol.close(v.a, v.b) && tol.close(v.b_eps, qe * qe * v.a_eps);
    if has_half {
        ok &= tol.close(v.b_half, qh * qh * v.a_half);
    }
    Ok(ok)
}

/// `max |g(J·,J·) − g(·,·)|` on the basis.
pub fn hermitian_residual(frame: &RestrictedFrame, fns: &RadialFns, q: &RadialFunction, t: f64) -> Result<f64> {
    let g = ambient_metric(frame, fns, t)?;
    let j = jq_matrix(frame, q, t)?;
    Ok((j.transpose() * &g * &j - &g).amax())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
    Inconclusive,
}

/// Probes `1, …, 1e-6`, 25 log-spaced points, decreasing.
pub fn default_probes() -> Vec<f64> {
    let mut p = log_space(1e-6, 1.0, 25);
    p.reverse();
    p
}

/// Numerical test of `0 < lim_{t→0⁺} q(t)/t < ∞`.
///
/// `Yes` when the ratio's relative spread over the last five probes is below
/// `1e-3`; `No` when it is strictly monotone there and has left `[1e-2, 1e2]`;
/// `Inconclusive` otherwise, including probe lists that stop above `1e-4`.
pub fn extension_admissible(q: &RadialFunction, probe_ts: &[f64]) -> Verdict {
    let decreasing = probe_ts.windows(2).all(|w| w[1] < w[0]);
    let deep = probe_ts.last().is_some_and(|&t| t < 1e-4);
    if probe_ts.len() < 5 || !decreasing || !deep {
        return Verdict::Inconclusive;
    }
    let mut ratios = Vec::with_capacity(probe_ts.len());
    for &t in probe_ts {
        match q.eval(t) {
            Ok(v) => ratios.push(v / t),
            Err(_) => return Verdict::Inconclusive,
        }
    }
    let tail = &ratios[ratios.len() - 5..];
    let (lo, hi) = tail.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, h), &x| (l.min(x), h.max(x)));
    let mean = tail.iter().sum::<f64>() / 5.0;
    if (hi - lo) / mean < 1e-3 {
        return Verdict::Yes;
    }
    let up = tail.windows(2).all(|w| w[1] > w[0]);
    let down = tail.windows(2).all(|w| w[1] < w[0]);
    let last = tail[4];
    if (up && last > 1e2) || (down && last < 1e-2) {
        Verdict::No
    } else {
        Verdict::Inconclusive
    }
}

/// `(φ^q, X/a(r), a(r)η, g̃)` on the slice `t = r`, with `g̃` read from `fns`.
pub fn induce_slice_structure(
    frame: &RestrictedFrame,
    fns: &RadialFns,
    q: &RadialFunction,
    r: f64,
    tol: &ToleranceConfig,
) -> Result<AlmostContactStructure> {
    if !is_hermitian(fns, q, r, frame.m_half > 0, tol)? {
        return Err(Error::NotHermitian(format!("conditions a = b, b_λ = q_λ² a_λ fail at r = {r}")));
    }
    let v = fns.at(r)?;
    let (qe, qh) = q_values(q, r)?;
    let params = MetricParams::new(v.a, v.a_eps, v.a_half, v.b_eps, v.b_half)?;
    phi_q_structure(frame, r, qe, qh, params, PhiQMode::Given)
}

/// `J^q` at the base point `[(e, tX)]` in the horizontal/vertical splitting:
/// `(ξ, u) ↦ (−⟨u,X⟩X − Σ (q_λ/λ_ℝ)⟨u,ξ^s_λ⟩ξ^s_λ, ⟨ξ,X⟩X + Σ (λ_ℝ/q_λ)⟨ξ,ξ^s_λ⟩ξ^s_λ)`.
/// `xi` and `u` are coordinates on `m = a ⊕ m_ε ⊕ m_ε/2` (the first
/// `1 + m_ε + m_ε/2` frame indices).
pub fn jq_base_point(frame: &RestrictedFrame, q: &RadialFunction, t: f64, xi: &Vector, u: &Vector) -> Result<(Vector, Vector)> {
    let dm = 1 + frame.m_eps + frame.m_half;
    check_dim(dm, xi.len())?;
    check_dim(dm, u.len())?;
    let (qe, qh) = q_values(q, t)?;
    let (le, lh) = lambdas(t);
    let mut hor = Vector::zeros(dm);
    let mut ver = Vector::zeros(dm);
    hor[0] = -u[0];
    ver[0] = xi[0];
    for i in 1..dm {
        let (qq, l) = if frame.block(Block::MEps).contains(&i) { (qe, le) } else { (qh, lh) };
        hor[i] = -(qq / l) * u[i];
        ver[i] = (l / qq) * xi[i];
    }
    Ok((hor, ver))
}

/// Maps a horizontal/vertical pair at `[(e, tX)]` to `m̄ ⊕ ℝ∂/∂t`:
/// vertical `X` is `∂/∂t` and vertical `ξ^s_λ` is `−ζ^s_λ/λ_ℝ(t)`.
pub fn to_slice_coordinates(frame: &RestrictedFrame, t: f64, xi: &Vector, u: &Vector) -> Result<Vector> {
    let dm = 1 + frame.m_eps + frame.m_half;
    check_dim(dm, xi.len())?;
    check_dim(dm, u.len())?;
    let n = frame.nbar;
    let (le, lh) = lambdas(t);
    let mut out = Vector::zeros(n + 1);
    out.rows_mut(0, dm).copy_from(xi);
    out[n] = u[0];
    for s in 0..frame.m_eps {
        out[frame.zeta_eps_index(s)] = -u[frame.xi_eps_index(s)] / le;
    }
    for p in 0..frame.m_half {
        out[frame.zeta_half_index(p)] = -u[frame.xi_half_index(p)] / lh;
    }
    Ok(out)
}
