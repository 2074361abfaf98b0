//! Compact real forms as explicit structure-constant tensors.
//!
//! Root-built algebras use the basis `i t_{α_k}` (k < rank) followed by the
//! pairs `U⁰_α, U¹_α` for each positive root in the root-system order, with
//! `U⁰_α = E_α − E_{−α}` and `U¹_α = i(E_α + E_{−α})`. The `so(n+1)` model
//! uses the skew matrices `A_jk = E_jk − E_kj` in lexicographic order.

use serde::{Deserialize, Serialize};

use crate::rootsys::{self, RootSystem};
use crate::{Error, Matrix, Result, ToleranceConfig, Vector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum AlgebraModel {
    /// Built from a signed root system.
    Roots,
    /// Skew-symmetric `(n+1)×(n+1)` matrices.
    SoMatrix { n: usize },
}

#[derive(Debug, Clone)]
pub struct CompactLieAlgebra {
    pub dim: usize,
    pub labels: Vec<String>,
    pub model: AlgebraModel,
    pub inv_form: Matrix,
    /// Positive root behind each `U` pair, for root-built algebras.
    pub u_roots: Vec<Vec<i32>>,
    pub rank: usize,
    tensor: Vec<f64>,
    sparse: Vec<Vec<(usize, f64)>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TensorDump {
    pub dim: usize,
    pub labels: Vec<String>,
    pub entries: Vec<(usize, usize, usize, f64)>,
}

impl CompactLieAlgebra {
    /// Assembles an algebra from a dense tensor with `[e_i, e_j] = Σ_k c[i][j][k] e_k`
    /// stored row-major at `(i*dim + j)*dim + k`. No validation is done here;
    /// see [`verify_algebra`].
    pub fn from_tensor(
        labels: Vec<String>,
        tensor: Vec<f64>,
        inv_form: Matrix,
        model: AlgebraModel,
    ) -> Result<Self> {
        let dim = labels.len();
        if tensor.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch { expected: dim * dim * dim, got: tensor.len() });
        }
        if inv_form.nrows() != dim || inv_form.ncols() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: inv_form.nrows() });
        }
        let sparse = (0..dim * dim)
            .map(|ij| {
                (0..dim)
                    .filter_map(|k| {
                        let c = tensor[ij * dim + k];
                        (c != 0.0).then_some((k, c))
                    })
                    .collect()
            })
            .collect();
        Ok(Self { dim, labels, model, inv_form, u_roots: Vec::new(), rank: 0, tensor, sparse })
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> f64 {
        self.tensor[(i * self.dim + j) * self.dim + k]
    }

    pub fn tensor(&self) -> &[f64] {
        &self.tensor
    }

    /// Nonzero `(k, c_ijk)` for a fixed ordered basis pair.
    pub fn structure_row(&self, i: usize, j: usize) -> &[(usize, f64)] {
        &self.sparse[i * self.dim + j]
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = Vector::zeros(self.dim);
        v[i] = 1.0;
        v
    }

    pub fn bracket(&self, x: &Vector, y: &Vector) -> Result<Vector> {
        crate::error::check_dim(self.dim, x.len())?;
        crate::error::check_dim(self.dim, y.len())?;
        Ok(self.bracket_unchecked(x, y))
    }

    pub(crate) fn bracket_unchecked(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zeros(self.dim);
        for i in 0..self.dim {
            let xi = x[i];
            if xi == 0.0 {
                continue;
            }
            for j in 0..self.dim {
                let yj = y[j];
                if yj == 0.0 {
                    continue;
                }
                let w = xi * yj;
                for &(k, c) in self.structure_row(i, j) {
                    out[k] += w * c;
                }
            }
        }
        out
    }

    /// Matrix of `ad_x` in the ambient basis.
    pub fn ad(&self, x: &Vector) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            let xi = x[i];
            if xi == 0.0 {
                continue;
            }
            for j in 0..self.dim {
                for &(k, c) in self.structure_row(i, j) {
                    m[(k, j)] += xi * c;
                }
            }
        }
        m
    }

    pub fn inner(&self, x: &Vector, y: &Vector) -> f64 {
        x.dot(&(&self.inv_form * y))
    }

    /// Killing form `B_ij = tr(ad_{e_i} ad_{e_j})`.
    pub fn killing_form(&self) -> Matrix {
        let ads: Vec<Matrix> = (0..self.dim).map(|i| self.ad(&self.basis_vector(i))).collect();
        Matrix::from_fn(self.dim, self.dim, |i, j| (&ads[i] * &ads[j]).trace())
    }

    /// Ambient index of `U^a_α` for the positive root at position `r`.
    pub fn u_index(&self, r: usize, a: usize) -> usize {
        self.rank + 2 * r + a
    }

    pub fn dump(&self) -> TensorDump {
        let mut entries = Vec::new();
        for i in 0..self.dim {
            for j in 0..self.dim {
                for &(k, c) in self.structure_row(i, j) {
                    entries.push((i, j, k, c));
                }
            }
        }
        TensorDump { dim: self.dim, labels: self.labels.clone(), entries }
    }
}

/// Compact real form of the complex algebra of `rs` (signed structure
/// constants required).
pub fn build_compact_from_roots(rs: &RootSystem) -> Result<CompactLieAlgebra> {
    if !rs.is_signed() {
        return Err(Error::UnsignedRootSystem);
    }
    let rank = rs.rank();
    let roots: Vec<Vec<i32>> = rs.positive_roots.iter().map(|r| r.coeffs.clone()).collect();
    let np = roots.len();
    let dim = rank + 2 * np;
    let u = |r: usize, a: usize| rank + 2 * r + (a % 2);

    let mut labels: Vec<String> = (0..rank).map(|k| format!("i t_{}", k + 1)).collect();
    for r in &roots {
        labels.push(format!("U0_{r:?}"));
        labels.push(format!("U1_{r:?}"));
    }

    let mut t = vec![0.0; dim * dim * dim];
    let mut set = |i: usize, j: usize, k: usize, c: f64| {
        t[(i * dim + j) * dim + k] += c;
        t[(j * dim + i) * dim + k] -= c;
    };

    // (i): [U^a_α, i t_k] = (−1)^{a+1} ⟨α, α_k⟩ U^{a+1}_α.
    for (r, alpha) in roots.iter().enumerate() {
        for k in 0..rank {
            let ek: Vec<i32> = (0..rank).map(|m| i32::from(m == k)).collect();
            let p = rs.inner(alpha, &ek);
            if p != 0.0 {
                set(u(r, 0), k, u(r, 1), -p);
                set(u(r, 1), k, u(r, 0), p);
            }
        }
        // (ii): [U⁰_α, U¹_α] = 2 i t_α.
        for k in 0..rank {
            if alpha[k] != 0 {
                set(u(r, 0), u(r, 1), k, 2.0 * alpha[k] as f64);
            }
        }
    }

    // (iii) for α ≠ β with a ≤ b, extended to negative roots by
    // U⁰_{−γ} = −U⁰_γ and U¹_{−γ} = U¹_γ.
    let signed_u = |coeffs: &[i32], a: usize| -> Option<(usize, f64)> {
        let c = a % 2;
        if let Some(p) = rs.position(coeffs) {
            return Some((u(p, c), 1.0));
        }
        let neg: Vec<i32> = coeffs.iter().map(|x| -x).collect();
        rs.position(&neg).map(|p| (u(p, c), if c == 0 { -1.0 } else { 1.0 }))
    };
    for (ra, alpha) in roots.iter().enumerate() {
        for (rb, beta) in roots.iter().enumerate() {
            if ra == rb {
                continue;
            }
            let neg_alpha: Vec<i32> = alpha.iter().map(|x| -x).collect();
            let n_plus = rs.n(alpha, beta);
            let n_minus = rs.n(&neg_alpha, beta);
            let sum = rootsys::add(alpha, beta);
            let diff = rootsys::sub(alpha, beta);
            for a in 0..2usize {
                for b in a..2usize {
                    // Each unordered basis pair is written once via `set`.
                    if a == b && ra > rb {
                        continue;
                    }
                    let (i, j) = (u(ra, a), u(rb, b));
                    let sign_ab = if a * b % 2 == 0 { 1.0 } else { -1.0 };
                    let sign_apb = if (a + b) % 2 == 0 { 1.0 } else { -1.0 };
                    if n_plus != 0.0 {
                        if let Some((k, s)) = signed_u(&sum, a + b) {
                            set(i, j, k, sign_ab * n_plus * s);
                        }
                    }
                    if n_minus != 0.0 {
                        if let Some((k, s)) = signed_u(&diff, a + b) {
                            set(i, j, k, sign_apb * n_minus * s);
                        }
                    }
                }
            }
        }
    }

    // −B: the simple-root Gram on the Cartan block, 2 on every U.
    let mut inv_form = Matrix::zeros(dim, dim);
    inv_form.view_mut((0, 0), (rank, rank)).copy_from(&rs.gram);
    for i in rank..dim {
        inv_form[(i, i)] = 2.0;
    }

    let mut alg = CompactLieAlgebra::from_tensor(labels, t, inv_form, AlgebraModel::Roots)?;
    alg.u_roots = roots;
    alg.rank = rank;
    Ok(alg)
}

/// `so(n+1)` in the basis `A_jk`, j < k, with the trace form `−½ tr(AB)`.
pub fn build_so_matrix_model(n: usize) -> Result<CompactLieAlgebra> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("so(n+1) model needs n >= 2, got {n}")));
    }
    let size = n + 1;
    let pairs: Vec<(usize, usize)> =
        (0..size).flat_map(|j| (j + 1..size).map(move |k| (j, k))).collect();
    let dim = pairs.len();
    let pos = |j: usize, k: usize| pairs.iter().position(|&p| p == (j, k)).expect("pair");
    let mat = |idx: usize| {
        let (j, k) = pairs[idx];
        let mut m = Matrix::zeros(size, size);
        m[(j, k)] = 1.0;
        m[(k, j)] = -1.0;
        m
    };
    let mats: Vec<Matrix> = (0..dim).map(mat).collect();
    let mut t = vec![0.0; dim * dim * dim];
    for i in 0..dim {
        for j in 0..dim {
            let comm = &mats[i] * &mats[j] - &mats[j] * &mats[i];
            for a in 0..size {
                for b in a + 1..size {
                    let c = comm[(a, b)];
                    if c != 0.0 {
                        t[(i * dim + j) * dim + pos(a, b)] = c;
                    }
                }
            }
        }
    }
    let labels = pairs.iter().map(|(j, k)| format!("A_{}{}", j + 1, k + 1)).collect();
    let inv_form = Matrix::from_fn(dim, dim, |i, j| -0.5 * (&mats[i] * &mats[j]).trace());
    CompactLieAlgebra::from_tensor(labels, t, inv_form, AlgebraModel::SoMatrix { n })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraReport {
    pub dim: usize,
    pub jacobi: f64,
    pub antisymmetry: f64,
    pub ad_invariance: f64,
    /// `max |inv_form − s·(−B)|` with the best scale `s`.
    pub killing_proportionality: f64,
    pub killing_scale: f64,
    /// `max |B(U^a_α, U^b_β) + 2δδ|`; root-built algebras only.
    pub u_orthonormality: Option<f64>,
    pub positive_definite: bool,
    pub passed: bool,
}

pub fn verify_algebra(alg: &CompactLieAlgebra, tol: &ToleranceConfig) -> AlgebraReport {
    let d = alg.dim;
    let mut antisymmetry: f64 = 0.0;
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                antisymmetry = antisymmetry.max((alg.c(i, j, k) + alg.c(j, i, k)).abs());
            }
        }
    }

    let ads: Vec<Matrix> = (0..d).map(|i| alg.ad(&alg.basis_vector(i))).collect();
    let mut jacobi: f64 = 0.0;
    for i in 0..d {
        for j in i + 1..d {
            // [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] for all k at once:
            // ad_{[e_i,e_j]} − [ad_i, ad_j] applied to e_k.
            let mut ad_ij = Matrix::zeros(d, d);
            for &(m, c) in alg.structure_row(i, j) {
                ad_ij += &ads[m] * c;
            }
            let res = ad_ij - (&ads[i] * &ads[j] - &ads[j] * &ads[i]);
            jacobi = jacobi.max(res.amax());
        }
    }

    let g = &alg.inv_form;
    let mut ad_invariance: f64 = 0.0;
    for a in &ads {
        let r = g * a + a.transpose() * g;
        ad_invariance = ad_invariance.max(r.amax());
    }

    let killing = Matrix::from_fn(d, d, |i, j| (&ads[i] * &ads[j]).trace());
    let neg_b = -&killing;
    let denom = neg_b.dot(&neg_b);
    let killing_scale = if denom > 0.0 { g.dot(&neg_b) / denom } else { 0.0 };
    let killing_proportionality = (g - &neg_b * killing_scale).amax();

    let u_orthonormality = (alg.model == AlgebraModel::Roots).then(|| {
        let mut worst: f64 = 0.0;
        for i in alg.rank..d {
            for j in alg.rank..d {
                let expected = if i == j { -2.0 } else { 0.0 };
                worst = worst.max((killing[(i, j)] - expected).abs());
            }
        }
        worst
    });

    let sym = (g + g.transpose()) * 0.5;
    let positive_definite = nalgebra::Cholesky::new(sym).is_some();
    let scale = g.amax().max(1.0);
    let ok = |r: f64| r <= tol.abs * scale;
    let passed = ok(jacobi)
        && ok(antisymmetry)
        && ok(ad_invariance)
        && ok(killing_proportionality)
        && u_orthonormality.is_none_or(ok)
        && positive_definite;
    AlgebraReport {
        dim: d,
        jacobi,
        antisymmetry,
        ad_invariance,
        killing_proportionality,
        killing_scale,
        u_orthonormality,
        positive_definite,
        passed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::SimpleBasis;

    fn tol() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn a1_bracket() {
        let rs = RootSystem::signed(&SimpleBasis::a(1).unwrap()).unwrap();
        let alg = build_compact_from_roots(&rs).unwrap();
        assert_eq!(alg.dim, 3);
        let br = alg.bracket(&alg.basis_vector(1), &alg.basis_vector(2)).unwrap();
        assert_eq!(br.as_slice(), &[2.0, 0.0, 0.0]);
    }

    #[test]
    fn unsigned_rejected() {
        let rs = RootSystem::generate(&SimpleBasis::a(2).unwrap()).unwrap();
        assert_eq!(build_compact_from_roots(&rs).unwrap_err(), Error::UnsignedRootSystem);
    }

    #[test]
    fn dimensions() {
        for n in 1..=4 {
            let rs = RootSystem::signed(&SimpleBasis::a(n).unwrap()).unwrap();
            assert_eq!(build_compact_from_roots(&rs).unwrap().dim, n * (n + 2));
        }
        for n in 1..=3 {
            let rs = RootSystem::signed(&SimpleBasis::c(n + 1).unwrap()).unwrap();
            assert_eq!(build_compact_from_roots(&rs).unwrap().dim, (n + 1) * (2 * n + 3));
        }
        for n in 2..=6 {
            assert_eq!(build_so_matrix_model(n).unwrap().dim, n * (n + 1) / 2);
        }
    }

    #[test]
    fn so3_commutators() {
        let alg = build_so_matrix_model(2).unwrap();
        // A12, A13, A23
        let b = alg.bracket(&alg.basis_vector(0), &alg.basis_vector(1)).unwrap();
        assert_eq!(b.as_slice(), &[0.0, 0.0, -1.0]);
        let b = alg.bracket(&alg.basis_vector(0), &alg.basis_vector(2)).unwrap();
        assert_eq!(b.as_slice(), &[0.0, 1.0, 0.0]);
        assert_eq!(alg.inv_form, Matrix::identity(3, 3));
        assert!(build_so_matrix_model(1).is_err());
    }

    #[test]
    fn so_models_verify_exactly() {
        for n in [2, 3, 5] {
            let r = verify_algebra(&build_so_matrix_model(n).unwrap(), &tol());
            assert!(r.passed, "{r:?}");
            assert!(r.jacobi < 1e-12 && r.ad_invariance < 1e-12);
        }
    }

    #[test]
    fn root_built_verify() {
        for basis in [SimpleBasis::a(2).unwrap(), SimpleBasis::c(2).unwrap(), SimpleBasis::c(3).unwrap()] {
            let alg = build_compact_from_roots(&RootSystem::signed(&basis).unwrap()).unwrap();
            let r = verify_algebra(&alg, &tol());
            assert!(r.passed, "{r:?}");
            assert!((r.killing_scale - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn corrupted_tensor_fails() {
        let alg = build_compact_from_roots(&RootSystem::signed(&SimpleBasis::a(2).unwrap()).unwrap()).unwrap();
        let mut t = alg.tensor().to_vec();
        let d = alg.dim;
        let idx = t.iter().position(|&c| c != 0.0).unwrap();
        t[idx] += 1e-3;
        let bad = CompactLieAlgebra::from_tensor(alg.labels.clone(), t, alg.inv_form.clone(), AlgebraModel::Roots).unwrap();
        let r = verify_algebra(&bad, &tol());
        assert!(!r.passed);
        assert!((r.antisymmetry - 1e-3).abs() < 1e-9);
        assert_eq!(bad.dim, d);
    }

    #[test]
    fn orthogonal_roots_commute() {
        // In A₃, α₁ and α₃ are orthogonal with α₁ ± α₃ not roots.
        let rs = RootSystem::signed(&SimpleBasis::a(3).unwrap()).unwrap();
        let alg = build_compact_from_roots(&rs).unwrap();
        let p1 = rs.position(&[1, 0, 0]).unwrap();
        let p3 = rs.position(&[0, 0, 1]).unwrap();
        for a in 0..2 {
            for b in 0..2 {
                let br = alg
                    .bracket(&alg.basis_vector(alg.u_index(p1, a)), &alg.basis_vector(alg.u_index(p3, b)))
                    .unwrap();
                assert_eq!(br.amax(), 0.0);
            }
        }
    }

    #[test]
    fn dump_roundtrip() {
        let alg = build_so_matrix_model(3).unwrap();
        let dump = alg.dump();
        let json = serde_json::to_string(&dump).unwrap();
        let back: TensorDump = serde_json::from_str(&json).unwrap();
        assert_eq!(back, dump);
        assert_eq!(back.dim, 6);
    }
}
