//! Compact rank-one symmetric spaces as symmetric pairs, with the Cartan
//! vector `X` and the restricted-root frame of `m̄ = m ⊕ k_ε ⊕ k_{ε/2}`.
//!
//! Frame coordinates order the full algebra as
//! `X, ξ_ε[..], ξ_{ε/2}[..], ζ_ε[..], ζ_{ε/2}[..], h[..]`; the first
//! `nbar` of them span `m̄`. All frame vectors are orthonormal for the
//! rescaled invariant form, so frame coordinates carry the identity Gram.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::compactform::{build_compact_from_roots, build_so_matrix_model, CompactLieAlgebra};
use crate::linalg;
use crate::report::{max_abs, Check};
use crate::rootsys::{RootSystem, SimpleBasis};
use crate::{Error, Matrix, Result, ToleranceConfig, Vector};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpaceFamily {
    Sphere,
    RealProjective,
    ComplexProjective,
    QuaternionicProjective,
    CayleyPlane,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpaceId {
    pub family: SpaceFamily,
    /// Ignored for the Cayley plane (stored as 2).
    pub n: usize,
}

impl SpaceId {
    pub fn new(family: SpaceFamily, n: usize) -> Result<Self> {
        use SpaceFamily::*;
        let min = match family {
            Sphere | RealProjective | ComplexProjective => 2,
            QuaternionicProjective => 1,
            CayleyPlane => return Ok(Self { family, n: 2 }),
        };
        if n < min {
            return Err(Error::InvalidSpace(format!("{family:?} requires n >= {min}, got {n}")));
        }
        Ok(Self { family, n })
    }

    pub fn sphere(n: usize) -> Result<Self> {
        Self::new(SpaceFamily::Sphere, n)
    }
    pub fn real_projective(n: usize) -> Result<Self> {
        Self::new(SpaceFamily::RealProjective, n)
    }
    pub fn complex_projective(n: usize) -> Result<Self> {
        Self::new(SpaceFamily::ComplexProjective, n)
    }
    pub fn quaternionic_projective(n: usize) -> Result<Self> {
        Self::new(SpaceFamily::QuaternionicProjective, n)
    }
    pub fn cayley_plane() -> Self {
        Self { family: SpaceFamily::CayleyPlane, n: 2 }
    }

    /// One space per family: S³, ℝP³, ℂP², ℍP², CaP².
    pub fn representatives() -> Vec<SpaceId> {
        vec![
            Self::sphere(3).expect("valid"),
            Self::real_projective(3).expect("valid"),
            Self::complex_projective(2).expect("valid"),
            Self::quaternionic_projective(2).expect("valid"),
            Self::cayley_plane(),
        ]
    }

    /// dim G/K
    pub fn dim(&self) -> usize {
        use SpaceFamily::*;
        match self.family {
            Sphere | RealProjective => self.n,
            ComplexProjective => 2 * self.n,
            QuaternionicProjective => 4 * self.n,
            CayleyPlane => 16,
        }
    }

    /// Table values (m_ε, m_{ε/2}).
    pub fn expected_multiplicities(&self) -> (usize, usize) {
        use SpaceFamily::*;
        let n = self.n;
        match self.family {
            Sphere | RealProjective => (n - 1, 0),
            ComplexProjective => (1, 2 * n - 2),
            QuaternionicProjective => (3, 4 * n - 4),
            CayleyPlane => (7, 8),
        }
    }

    /// Table value of dim h: so(n−1), ℝ ⊕ su(n−1), sp(1) ⊕ sp(n−1), so(7).
    pub fn expected_h_dim(&self) -> usize {
        use SpaceFamily::*;
        let n = self.n;
        match self.family {
            Sphere | RealProjective => (n - 1) * (n - 2) / 2,
            ComplexProjective => 1 + (n - 1) * (n - 1) - 1,
            QuaternionicProjective => 3 + (n - 1) * (2 * n - 1),
            CayleyPlane => 21,
        }
    }

    pub fn has_half_root(&self) -> bool {
        self.expected_multiplicities().1 > 0
    }
}

impl fmt::Display for SpaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use SpaceFamily::*;
        match self.family {
            Sphere => write!(f, "S^{}", self.n),
            RealProjective => write!(f, "RP^{}", self.n),
            ComplexProjective => write!(f, "CP^{}", self.n),
            QuaternionicProjective => write!(f, "HP^{}", self.n),
            CayleyPlane => write!(f, "CaP^2"),
        }
    }
}

impl FromStr for SpaceFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        use SpaceFamily::*;
        match s.to_ascii_lowercase().as_str() {
            "sphere" | "s" => Ok(Sphere),
            "rp" | "real" => Ok(RealProjective),
            "cp" | "complex" => Ok(ComplexProjective),
            "hp" | "quaternionic" => Ok(QuaternionicProjective),
            "cayley" | "cap" | "op" => Ok(CayleyPlane),
            other => Err(Error::InvalidSpace(format!("unknown space family '{other}'"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SymmetricPair {
    pub space: SpaceId,
    pub alg: CompactLieAlgebra,
    pub sigma: Matrix,
    /// Orthonormal for `alg.inv_form`.
    pub k_basis: Vec<Vector>,
    pub m_basis: Vec<Vector>,
}

// Simple root whose coefficient parity gives σ, and the seed for X.
fn special_node(space: &SpaceId) -> usize {
    match space.family {
        SpaceFamily::CayleyPlane => 3,
        _ => 0,
    }
}

pub fn build_pair(space: SpaceId) -> Result<SymmetricPair> {
    use SpaceFamily::*;
    let space = SpaceId::new(space.family, space.n)?;
    let (alg, signs): (CompactLieAlgebra, Vec<f64>) = match space.family {
        Sphere | RealProjective => {
            let alg = build_so_matrix_model(space.n)?;
            // m = span{A_1k}
            let signs = alg.labels.iter().map(|l| if l.starts_with("A_1") { -1.0 } else { 1.0 }).collect();
            (alg, signs)
        }
        _ => {
            let basis = match space.family {
                ComplexProjective => SimpleBasis::a(space.n)?,
                QuaternionicProjective => SimpleBasis::c(space.n + 1)?,
                _ => SimpleBasis::f4(),
            };
            let rs = RootSystem::signed(&basis)?;
            let alg = build_compact_from_roots(&rs)?;
            let node = special_node(&space);
            let mut signs = vec![1.0; alg.rank];
            for root in &alg.u_roots {
                let s = if root[node] % 2 == 0 { 1.0 } else { -1.0 };
                signs.push(s);
                signs.push(s);
            }
            (alg, signs)
        }
    };
    let sigma = Matrix::from_diagonal(&Vector::from_vec(signs.clone()));
    let pick = |sign: f64| -> Vec<Vector> {
        let cands: Vec<Vector> = (0..alg.dim).filter(|&i| signs[i] == sign).map(|i| alg.basis_vector(i)).collect();
        linalg::orthonormalize(&alg.inv_form, &cands, 1e-12)
    };
    let k_basis = pick(1.0);
    let m_basis = pick(-1.0);
    Ok(SymmetricPair { space, alg, sigma, k_basis, m_basis })
}

impl SymmetricPair {
    fn seed(&self) -> Vector {
        match self.space.family {
            SpaceFamily::Sphere | SpaceFamily::RealProjective => self.alg.basis_vector(0),
            _ => {
                let node = special_node(&self.space);
                let simple: Vec<i32> = (0..self.alg.rank).map(|k| i32::from(k == node)).collect();
                let r = self.alg.u_roots.iter().position(|c| *c == simple).expect("simple root present");
                self.alg.basis_vector(self.alg.u_index(r, 0))
            }
        }
    }

    /// σ² = I, σ an automorphism, the bracket inclusions of a symmetric
    /// pair and k ⊥ m.
    pub fn verify(&self, tol: &ToleranceConfig) -> Vec<Check> {
        let alg = &self.alg;
        let d = alg.dim;
        let id = Matrix::identity(d, d);
        let sq = max_abs((&self.sigma * &self.sigma - id).iter().copied());
        let mut auto: f64 = 0.0;
        for i in 0..d {
            for j in i + 1..d {
                let (ei, ej) = (alg.basis_vector(i), alg.basis_vector(j));
                let lhs = &self.sigma * alg.bracket_unchecked(&ei, &ej);
                let rhs = alg.bracket_unchecked(&(&self.sigma * ei), &(&self.sigma * ej));
                auto = auto.max((lhs - rhs).amax());
            }
        }
        let proj_res = |a: &[Vector], b: &[Vector], target: &[Vector]| -> f64 {
            let mut worst: f64 = 0.0;
            for x in a {
                for y in b {
                    let br = alg.bracket_unchecked(x, y);
                    let off = &br - linalg::project(&alg.inv_form, target, &br);
                    worst = worst.max(linalg::norm(&alg.inv_form, &off));
                }
            }
            worst
        };
        let mm = proj_res(&self.m_basis, &self.m_basis, &self.k_basis);
        let km = proj_res(&self.k_basis, &self.m_basis, &self.m_basis);
        let kk = proj_res(&self.k_basis, &self.k_basis, &self.k_basis);
        let mut orth: f64 = 0.0;
        for k in &self.k_basis {
            for m in &self.m_basis {
                orth = orth.max(alg.inner(k, m).abs());
            }
        }
        let t = tol.abs;
        vec![
            Check::residual("sigma involutive", "σ is an involutive automorphism", sq, t),
            Check::residual("sigma automorphism", "σ is an involutive automorphism", auto, t),
            Check::residual("[m,m] in k", "symmetric pair bracket relations", mm, t),
            Check::residual("[k,m] in m", "symmetric pair bracket relations", km, t),
            Check::residual("[k,k] in k", "symmetric pair bracket relations", kk, t),
            Check::residual("k orthogonal to m", "reductive decomposition is orthogonal", orth, t),
        ]
    }
}

/// Cartan vector X (ε_ℝ(X) = 1) and the factor `c` by which the invariant
/// form is multiplied so that ⟨X, X⟩ = 1.
pub fn choose_cartan_vector(pair: &SymmetricPair) -> Result<(Vector, f64)> {
    let alg = &pair.alg;
    let seed = pair.seed();
    let op = |v: &Vector| -> Vector {
        let inner = alg.bracket_unchecked(&seed, v);
        -alg.bracket_unchecked(&seed, &inner)
    };
    let m = linalg::restricted_matrix(&alg.inv_form, &pair.m_basis, op);
    let (vals, _) = linalg::symmetric_eigen(&m);
    let top = vals.last().copied().unwrap_or(0.0);
    if top <= 0.0 {
        return Err(Error::Internal(format!("seed direction of {} has trivial ad² spectrum", pair.space)));
    }
    let x = seed / top.sqrt();
    let c = 1.0 / alg.inner(&x, &x);
    Ok((x, c))
}

#[derive(Debug, Clone)]
pub struct RestrictedFrame {
    pub space: SpaceId,
    pub m_eps: usize,
    pub m_half: usize,
    pub h_dim: usize,
    /// dim m̄
    pub nbar: usize,
    /// dim g
    pub dim: usize,
    pub x: Vector,
    pub xi_eps: Vec<Vector>,
    pub xi_half: Vec<Vector>,
    pub zeta_eps: Vec<Vector>,
    pub zeta_half: Vec<Vector>,
    pub h_basis: Vec<Vector>,
    /// Ambient invariant form multiplied by `form_scale`.
    pub form: Matrix,
    pub form_scale: f64,
    /// Eigenvalues of −ad²_X on m and on k, ascending.
    pub spectrum_m: Vec<f64>,
    pub spectrum_k: Vec<f64>,
    /// `[b_i, b_j] = Σ_k t[(i*dim + j)*dim + k] b_k` in frame coordinates.
    tensor: Vec<f64>,
    sparse: Vec<Vec<(usize, f64)>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Block {
    A,
    MEps,
    MHalf,
    KEps,
    KHalf,
    H,
}

impl Block {
    pub const ALL: [Block; 6] = [Block::A, Block::MEps, Block::MHalf, Block::KEps, Block::KHalf, Block::H];

    pub fn name(&self) -> &'static str {
        match self {
            Block::A => "a",
            Block::MEps => "m_eps",
            Block::MHalf => "m_half",
            Block::KEps => "k_eps",
            Block::KHalf => "k_half",
            Block::H => "h",
        }
    }
}

fn cluster(value: f64, tol: f64) -> Option<usize> {
    [0.0, 1.0, 0.25].iter().position(|&c| (value - c).abs() <= tol)
}

fn eigenspaces(
    alg: &CompactLieAlgebra,
    form: &Matrix,
    basis: &[Vector],
    x: &Vector,
    tol: f64,
    what: &str,
) -> Result<(Vec<f64>, [Vec<Vector>; 3])> {
    let op = |v: &Vector| -> Vector {
        let inner = alg.bracket_unchecked(x, v);
        -alg.bracket_unchecked(x, &inner)
    };
    let m = linalg::restricted_matrix(form, basis, op);
    let (vals, vecs) = linalg::symmetric_eigen(&m);
    let mut groups: [Vec<usize>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for (i, &v) in vals.iter().enumerate() {
        match cluster(v, tol) {
            Some(c) => groups[c].push(i),
            None => {
                return Err(Error::NotRankOne(format!("stray eigenvalue {v:.6} of -ad²_X on {what}")));
            }
        }
    }
    let d = alg.dim;
    let spaces = groups.map(|idx| {
        // Ambient eigenvectors, then the projector applied to e_0, e_1, …
        let w: Vec<Vector> = idx
            .iter()
            .map(|&c| {
                let mut v = Vector::zeros(d);
                for (r, b) in basis.iter().enumerate() {
                    v.axpy(vecs[(r, c)], b, 1.0);
                }
                v
            })
            .collect();
        let cands: Vec<Vector> = (0..d)
            .map(|j| {
                let mut e = Vector::zeros(d);
                e[j] = 1.0;
                linalg::project(form, &w, &e)
            })
            .collect();
        linalg::pivoted_basis(form, &cands, w.len())
    });
    Ok((vals, spaces))
}

pub fn restricted_frame(pair: &SymmetricPair, x: &Vector, form_scale: f64, tol: &ToleranceConfig) -> Result<RestrictedFrame> {
    let alg = &pair.alg;
    let form = &alg.inv_form * form_scale;
    let rescale = 1.0 / form_scale.sqrt();
    let m_on: Vec<Vector> = pair.m_basis.iter().map(|v| v * rescale).collect();
    let k_on: Vec<Vector> = pair.k_basis.iter().map(|v| v * rescale).collect();
    let (spectrum_m, [a_sp, m_eps_sp, m_half_sp]) = eigenspaces(alg, &form, &m_on, x, tol.eigen_cluster, "m")?;
    let (spectrum_k, [h_sp, k_eps_sp, k_half_sp]) = eigenspaces(alg, &form, &k_on, x, tol.eigen_cluster, "k")?;
    if a_sp.len() != 1 {
        return Err(Error::NotRankOne(format!("centralizer of X in m has dimension {}", a_sp.len())));
    }
    if k_eps_sp.len() != m_eps_sp.len() || k_half_sp.len() != m_half_sp.len() {
        return Err(Error::Internal("k_λ and m_λ dimensions differ".into()));
    }
    let zeta = |xis: &[Vector], lambda: f64| -> Vec<Vector> {
        xis.iter().map(|xi| alg.bracket_unchecked(x, xi) * (-1.0 / lambda)).collect()
    };
    let zeta_eps = zeta(&m_eps_sp, 1.0);
    let zeta_half = zeta(&m_half_sp, 0.5);

    let mut all: Vec<Vector> = vec![x.clone()];
    all.extend(m_eps_sp.iter().cloned());
    all.extend(m_half_sp.iter().cloned());
    all.extend(zeta_eps.iter().cloned());
    all.extend(zeta_half.iter().cloned());
    all.extend(h_sp.iter().cloned());
    let d = alg.dim;
    if all.len() != d {
        return Err(Error::Internal(format!("frame has {} vectors for dim {d}", all.len())));
    }
    let b = Matrix::from_columns(&all);
    // Coordinates in an orthonormal frame: Bᵀ·form.
    let coord = b.transpose() * &form;
    let mut tensor = vec![0.0; d * d * d];
    for i in 0..d {
        for j in i + 1..d {
            let br = alg.bracket_unchecked(&all[i], &all[j]);
            let c = &coord * br;
            for k in 0..d {
                let v = c[k];
                if v.abs() > 1e-15 {
                    tensor[(i * d + j) * d + k] = v;
                    tensor[(j * d + i) * d + k] = -v;
                }
            }
        }
    }
    let sparse = (0..d * d)
        .map(|ij| (0..d).filter_map(|k| {
            let c = tensor[ij * d + k];
            (c != 0.0).then_some((k, c))
        }).collect())
        .collect();
    let m_eps = m_eps_sp.len();
    let m_half = m_half_sp.len();
    Ok(RestrictedFrame {
        space: pair.space,
        m_eps,
        m_half,
        h_dim: h_sp.len(),
        nbar: 1 + 2 * (m_eps + m_half),
        dim: d,
        x: x.clone(),
        xi_eps: m_eps_sp,
        xi_half: m_half_sp,
        zeta_eps,
        zeta_half,
        h_basis: h_sp,
        form,
        form_scale,
        spectrum_m,
        spectrum_k,
        tensor,
        sparse,
    })
}

impl RestrictedFrame {
    pub fn block(&self, b: Block) -> Range<usize> {
        let (me, mh) = (self.m_eps, self.m_half);
        match b {
            Block::A => 0..1,
            Block::MEps => 1..1 + me,
            Block::MHalf => 1 + me..1 + me + mh,
            Block::KEps => 1 + me + mh..1 + 2 * me + mh,
            Block::KHalf => 1 + 2 * me + mh..self.nbar,
            Block::H => self.nbar..self.dim,
        }
    }

    pub fn xi_eps_index(&self, j: usize) -> usize {
        1 + j
    }
    pub fn xi_half_index(&self, p: usize) -> usize {
        1 + self.m_eps + p
    }
    pub fn zeta_eps_index(&self, j: usize) -> usize {
        1 + self.m_eps + self.m_half + j
    }
    pub fn zeta_half_index(&self, p: usize) -> usize {
        1 + 2 * self.m_eps + self.m_half + p
    }

    /// λ_ℝ(X) for an m̄ frame index in m⁺ ⊕ k⁺; `None` for X and h.
    pub fn lambda_of(&self, i: usize) -> Option<f64> {
        if self.block(Block::MEps).contains(&i) || self.block(Block::KEps).contains(&i) {
            Some(1.0)
        } else if self.block(Block::MHalf).contains(&i) || self.block(Block::KHalf).contains(&i) {
            Some(0.5)
        } else {
            None
        }
    }

    pub fn f(&self, i: usize, j: usize, k: usize) -> f64 {
        self.tensor[(i * self.dim + j) * self.dim + k]
    }

    pub fn structure_row(&self, i: usize, j: usize) -> &[(usize, f64)] {
        &self.sparse[i * self.dim + j]
    }

    pub fn unit(&self, i: usize) -> Vector {
        let mut v = Vector::zeros(self.dim);
        v[i] = 1.0;
        v
    }

    /// Bracket in full frame coordinates.
    pub fn bracket(&self, u: &Vector, v: &Vector) -> Vector {
        let d = u.len();
        let mut out = Vector::zeros(self.dim);
        for i in 0..d {
            if u[i] == 0.0 {
                continue;
            }
            for j in 0..v.len() {
                if v[j] == 0.0 {
                    continue;
                }
                let w = u[i] * v[j];
                for &(k, c) in self.structure_row(i, j) {
                    out[k] += w * c;
                }
            }
        }
        out
    }

    /// `[u, v]_m̄` for u, v given by their m̄ coordinates.
    pub fn bracket_mbar(&self, u: &Vector, v: &Vector) -> Vector {
        let full = self.bracket(u, v);
        full.rows(0, self.nbar).into_owned()
    }

    /// Frame vector at index `i` in ambient coordinates.
    pub fn ambient(&self, i: usize) -> Vector {
        let (me, mh) = (self.m_eps, self.m_half);
        if i == 0 {
            self.x.clone()
        } else if i < 1 + me {
            self.xi_eps[i - 1].clone()
        } else if i < 1 + me + mh {
            self.xi_half[i - 1 - me].clone()
        } else if i < 1 + 2 * me + mh {
            self.zeta_eps[i - 1 - me - mh].clone()
        } else if i < self.nbar {
            self.zeta_half[i - 1 - 2 * me - mh].clone()
        } else {
            self.h_basis[i - self.nbar].clone()
        }
    }

    /// Norm of the part of `v` outside the listed blocks.
    pub fn off_block_norm(&self, v: &Vector, allowed: &[Block]) -> f64 {
        let mut s = 0.0;
        for b in Block::ALL {
            if allowed.contains(&b) {
                continue;
            }
            for i in self.block(b) {
                s += v[i] * v[i];
            }
        }
        s.sqrt()
    }

    pub fn summary(&self, checks: Vec<Check>) -> FrameSummary {
        FrameSummary {
            space: self.space.to_string(),
            dims: FrameDims { g: self.dim, mbar: self.nbar, h: self.h_dim, space: self.space.dim() },
            multiplicities: (self.m_eps, self.m_half),
            spectrum: Spectrum { m: self.spectrum_m.clone(), k: self.spectrum_k.clone() },
            check_results: checks,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameDims {
    pub g: usize,
    pub mbar: usize,
    pub h: usize,
    pub space: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub m: Vec<f64>,
    pub k: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameSummary {
    pub space: String,
    pub dims: FrameDims,
    pub multiplicities: (usize, usize),
    pub spectrum: Spectrum,
    pub check_results: Vec<Check>,
}

/// Pair, Cartan vector and frame together.
#[derive(Debug, Clone)]
pub struct CrossModel {
    pub pair: SymmetricPair,
    pub frame: RestrictedFrame,
}

impl CrossModel {
    pub fn build(space: SpaceId, tol: &ToleranceConfig) -> Result<Self> {
        let pair = build_pair(space)?;
        let (x, c) = choose_cartan_vector(&pair)?;
        let frame = restricted_frame(&pair, &x, c, tol)?;
        Ok(Self { pair, frame })
    }

    /// Eigen relations, the ξ/ζ pairing, orthonormality and dimensions.
    pub fn verify_frame(&self, tol: &ToleranceConfig) -> Vec<Check> {
        let f = &self.frame;
        let alg = &self.pair.alg;
        let t = tol.abs;
        let ad2 = |v: &Vector| alg.bracket_unchecked(&f.x, &alg.bracket_unchecked(&f.x, v));
        let mut eig: f64 = 0.0;
        let mut pairing: f64 = 0.0;
        for (xis, zetas, lam) in [(&f.xi_eps, &f.zeta_eps, 1.0), (&f.xi_half, &f.zeta_half, 0.5)] {
            for (xi, zeta) in xis.iter().zip(zetas.iter()) {
                eig = eig.max((ad2(xi) + xi * (lam * lam)).amax());
                eig = eig.max((ad2(zeta) + zeta * (lam * lam)).amax());
                let bx = alg.bracket_unchecked(&f.x, xi);
                pairing = pairing.max((bx + zeta * lam).amax());
                let bz = alg.bracket_unchecked(&f.x, zeta);
                pairing = pairing.max((bz - xi * lam).amax());
            }
        }
        let h_x = max_abs(f.h_basis.iter().map(|h| alg.bracket_unchecked(h, &f.x).amax()));
        let all: Vec<Vector> = (0..f.dim).map(|i| f.ambient(i)).collect();
        let b = Matrix::from_columns(&all);
        let orth = (b.transpose() * &f.form * &b - Matrix::identity(f.dim, f.dim)).amax();
        let xx = (f.form_scale * alg.inner(&f.x, &f.x) - 1.0).abs();
        let sigma_zeta = max_abs(
            f.zeta_eps.iter().chain(f.zeta_half.iter()).chain(f.h_basis.iter())
                .map(|z| (&self.pair.sigma * z - z).amax()),
        );
        let expected_nbar = 2 * f.space.dim() - 1;
        vec![
            Check::residual("ad_X^2 eigenvalues on frame", "ad²_X = −λ_ℝ(X)² on m_λ and k_λ", eig, t),
            Check::residual("xi-zeta pairing", "[X,ξ_λ] = −λ_ℝ(X)ζ_λ, [X,ζ_λ] = λ_ℝ(X)ξ_λ", pairing, t),
            Check::residual("h centralizes X", "h is the centralizer of a in k", h_x, t),
            Check::residual("frame orthonormal", "frame bases are orthonormal; ζ-pairing is an isometry", orth, t),
            Check::residual("X unit length", "⟨X,X⟩ = 1 after rescaling", xx, t),
            Check::residual("zeta and h lie in k", "k_λ and h are in the +1 eigenspace of σ", sigma_zeta, t),
            Check::exact(
                "dim mbar = 2 dim(G/K) - 1",
                "m̄ models the tangent sphere bundle",
                f.nbar == expected_nbar,
                format!("dim m̄ = {}, expected {expected_nbar}", f.nbar),
            ),
        ]
    }
}

/// Bracket inclusions between the frame blocks and the ε/ε-half pairing
/// identities, as projection residuals.
pub fn verify_bracket_laws(frame: &RestrictedFrame, tol: &ToleranceConfig) -> Vec<Check> {
    use Block::*;
    let mut rules: Vec<(Block, Block, Vec<Block>)> = Vec::new();
    for (m, k) in [(MEps, KEps), (MHalf, KHalf)] {
        rules.push((H, m, vec![m]));
        rules.push((H, k, vec![k]));
        rules.push((A, m, vec![k]));
        rules.push((A, k, vec![m]));
    }
    rules.extend([
        (MEps, MEps, vec![H]),
        (MEps, MHalf, vec![KHalf]),
        (MEps, KEps, vec![A]),
        (MEps, KHalf, vec![MHalf]),
        (MHalf, MHalf, vec![H, KEps]),
        (MHalf, KEps, vec![MHalf]),
        (MHalf, KHalf, vec![A, MEps]),
        (KEps, KEps, vec![H]),
        (KEps, KHalf, vec![KHalf]),
        (KHalf, KHalf, vec![H, KEps]),
    ]);
    let mut checks = Vec::new();
    for (p, q, target) in rules {
        let mut worst: f64 = 0.0;
        for i in frame.block(p) {
            for j in frame.block(q) {
                let br = frame.bracket(&frame.unit(i), &frame.unit(j));
                worst = worst.max(frame.off_block_norm(&br, &target));
            }
        }
        let tname: Vec<&str> = target.iter().map(|b| b.name()).collect();
        checks.push(Check::residual(
            format!("[{},{}] in {}", p.name(), q.name(), tname.join("+")),
            "bracket inclusions of the restricted-root decomposition",
            worst,
            tol.abs,
        ));
    }

    let mut s2a: f64 = 0.0;
    let mut s2b: f64 = 0.0;
    for j in 0..frame.m_eps {
        for p in 0..frame.m_half {
            let (xe, ze) = (frame.unit(frame.xi_eps_index(j)), frame.unit(frame.zeta_eps_index(j)));
            let (xh, zh) = (frame.unit(frame.xi_half_index(p)), frame.unit(frame.zeta_half_index(p)));
            s2a = s2a.max((frame.bracket(&xe, &xh) - frame.bracket(&ze, &zh)).amax());
            s2b = s2b.max((frame.bracket(&ze, &xh) + frame.bracket(&xe, &zh)).amax());
        }
    }
    checks.push(Check::residual(
        "[xi_eps,xi_half] = [zeta_eps,zeta_half]",
        "pairing identities between ε and ε/2 frames",
        s2a,
        tol.abs,
    ));
    checks.push(Check::residual(
        "[zeta_eps,xi_half] = -[xi_eps,zeta_half]",
        "pairing identities between ε and ε/2 frames",
        s2b,
        tol.abs,
    ));
    checks
}

/// Center of h, as coordinate vectors over the h frame block.
pub fn center_of_h(frame: &RestrictedFrame, tol: &ToleranceConfig) -> Vec<Vector> {
    let h = frame.block(Block::H);
    let hd = h.len();
    if hd == 0 {
        return Vec::new();
    }
    // Row (j, k): coefficient of b_k in [z, h_j] as a linear function of z.
    let mut a = Matrix::zeros(hd * frame.dim, hd);
    for (zi, i) in h.clone().enumerate() {
        for (jj, j) in h.clone().enumerate() {
            for &(k, c) in frame.structure_row(i, j) {
                a[(jj * frame.dim + k, zi)] = c;
            }
        }
    }
    linalg::null_space(&a, tol.eigen_cluster)
}

/// Basis-independent consequences of the ℂPⁿ bracket table.
pub fn fixture_check_cp_brackets(frame: &RestrictedFrame, tol: &ToleranceConfig) -> Result<Vec<Check>> {
    if frame.space.family != SpaceFamily::ComplexProjective {
        return Err(Error::InvalidSpace(format!("{} is not a complex projective space", frame.space)));
    }
    let t = tol.abs;
    let xe = frame.unit(frame.xi_eps_index(0));
    let ze = frame.unit(frame.zeta_eps_index(0));
    let x = frame.unit(0);
    let r1 = (frame.bracket(&xe, &ze) + &x).amax();
    let r0 = frame.bracket(&xe, &xe).amax();
    let mut r2: f64 = 0.0;
    let mut r3: f64 = 0.0;
    let mut r4: f64 = 0.0;
    for p in 0..frame.m_half {
        let xh = frame.unit(frame.xi_half_index(p));
        let zh = frame.unit(frame.zeta_half_index(p));
        r2 = r2.max((frame.bracket(&xh, &zh)[0] + 0.5).abs());
        r3 = r3.max((frame.bracket(&xe, &xh).norm() - 0.5).abs());
        r4 = r4.max((frame.bracket(&xe, &zh) + frame.bracket(&ze, &xh)).amax());
    }
    let claim = "ℂPⁿ bracket table";
    Ok(vec![
        Check::residual("[xi_eps,zeta_eps] = -X", claim, r1, t),
        Check::residual("<[xi_half,zeta_half],X> = -1/2", claim, r2, t),
        Check::residual("|[xi_eps,xi_half]| = 1/2", claim, r3, t),
        Check::residual("[xi_eps,zeta_half] = -[zeta_eps,xi_half]", claim, r4, t),
        Check::residual("[xi_eps,xi_eps] = 0", claim, r0, t),
    ])
}

/// Table I comparison: dimension, multiplicities and dim h (exact integers).
pub fn table1_checks(model: &CrossModel) -> Vec<Check> {
    let f = &model.frame;
    let s = f.space;
    let (me, mh) = s.expected_multiplicities();
    let dim_m = model.pair.m_basis.len();
    vec![
        Check::exact(
            format!("dimension {}", s.dim()),
            "table of compact rank-one symmetric spaces",
            dim_m == s.dim(),
            format!("dim m = {dim_m}"),
        ),
        Check::exact(
            format!("multiplicities ({me}, {mh})"),
            "table of compact rank-one symmetric spaces",
            (f.m_eps, f.m_half) == (me, mh),
            format!("computed ({}, {})", f.m_eps, f.m_half),
        ),
        Check::exact(
            format!("dim h = {}", s.expected_h_dim()),
            "table of compact rank-one symmetric spaces",
            f.h_dim == s.expected_h_dim(),
            format!("computed {}", f.h_dim),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn space_constraints() {
        assert!(SpaceId::sphere(1).is_err());
        assert!(SpaceId::complex_projective(1).is_err());
        assert!(SpaceId::quaternionic_projective(1).is_ok());
        assert!(SpaceId::quaternionic_projective(0).is_err());
        assert_eq!(SpaceId::new(SpaceFamily::CayleyPlane, 7).unwrap().n, 2);
        assert_eq!("cp".parse::<SpaceFamily>().unwrap(), SpaceFamily::ComplexProjective);
        assert!("xx".parse::<SpaceFamily>().is_err());
    }

    #[test]
    fn cp2_pair_dimensions() {
        let pair = build_pair(SpaceId::complex_projective(2).unwrap()).unwrap();
        assert_eq!(pair.m_basis.len(), 4);
        assert!(pair.verify(&tol()).iter().all(|c| c.passed));
    }

    #[test]
    fn sphere_cartan_vector() {
        let pair = build_pair(SpaceId::sphere(3).unwrap()).unwrap();
        let (x, c) = choose_cartan_vector(&pair).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-12 && (c - 1.0).abs() < 1e-12);
        // ad²_X A13 = −A13
        let a13 = pair.alg.basis_vector(1);
        let r = pair.alg.bracket_unchecked(&x, &pair.alg.bracket_unchecked(&x, &a13));
        assert!((r + a13).amax() < 1e-12);
    }

    #[test]
    fn cp_multiplicities_and_fixture() {
        for n in [2, 3] {
            let m = CrossModel::build(SpaceId::complex_projective(n).unwrap(), &tol()).unwrap();
            assert_eq!((m.frame.m_eps, m.frame.m_half), (1, 2 * n - 2));
            for c in m.verify_frame(&tol()) {
                assert!(c.passed, "{c:?}");
            }
            for c in verify_bracket_laws(&m.frame, &tol()) {
                assert!(c.passed, "{c:?}");
            }
            for c in fixture_check_cp_brackets(&m.frame, &tol()).unwrap() {
                assert!(c.passed, "{c:?}");
            }
            assert_eq!(center_of_h(&m.frame, &tol()).len(), 1);
        }
    }

    #[test]
    fn sphere_has_no_half_root() {
        let m = CrossModel::build(SpaceId::sphere(4).unwrap(), &tol()).unwrap();
        assert_eq!((m.frame.m_eps, m.frame.m_half, m.frame.h_dim), (3, 0, 3));
        assert!(verify_bracket_laws(&m.frame, &tol()).iter().all(|c| c.passed));
        assert!(fixture_check_cp_brackets(&m.frame, &tol()).is_err());
    }

    #[test]
    fn sphere_and_rp_frames_agree() {
        let s = CrossModel::build(SpaceId::sphere(4).unwrap(), &tol()).unwrap();
        let r = CrossModel::build(SpaceId::real_projective(4).unwrap(), &tol()).unwrap();
        assert_eq!(s.frame.tensor, r.frame.tensor);
        assert_eq!(s.frame.spectrum_m, r.frame.spectrum_m);
    }
}
