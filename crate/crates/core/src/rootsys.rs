//! Root systems of the simple complex Lie algebras used by the compact
//! rank-one symmetric spaces: positive roots by string closure, the Killing
//! inner product on roots, root strings and signed structure constants.

use std::collections::{HashMap, VecDeque};

use nalgebra::Cholesky;
use serde::{Deserialize, Serialize};

use crate::{Error, Matrix, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    /// F₄ with α₁, α₂ long and α₃, α₄ short.
    F4,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimpleBasis {
    pub rank: usize,
    pub cartan_matrix: Vec<Vec<i32>>,
    pub family: Family,
}

impl SimpleBasis {
    /// Validates the integrality conditions; finiteness and connectivity
    /// are checked when the root system is generated.
    pub fn new(cartan_matrix: Vec<Vec<i32>>, family: Family) -> Result<Self> {
        let rank = cartan_matrix.len();
        if rank == 0 {
            return Err(Error::InvalidCartan("empty matrix".into()));
        }
        for (i, row) in cartan_matrix.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidCartan(format!("row {i} has length {}", row.len())));
            }
            if row[i] != 2 {
                return Err(Error::InvalidCartan(format!("diagonal entry {i} is {}", row[i])));
            }
            for (j, &c) in row.iter().enumerate() {
                if i == j {
                    continue;
                }
                if c > 0 {
                    return Err(Error::InvalidCartan(format!("entry ({i},{j}) = {c} is positive")));
                }
                if (c == 0) != (cartan_matrix[j][i] == 0) {
                    return Err(Error::InvalidCartan(format!(
                        "entries ({i},{j}) and ({j},{i}) disagree on vanishing"
                    )));
                }
            }
        }
        Ok(Self { rank, cartan_matrix, family })
    }

    pub fn a(n: usize) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidParameter("A_n needs n >= 1".into()));
        }
        Self::new(chain(n, None), Family::A)
    }

    /// B_n, last simple root short.
    pub fn b(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter("B_n needs n >= 2".into()));
        }
        Self::new(chain(n, Some((n - 2, -2, -1))), Family::B)
    }

    /// C_n, last simple root long.
    pub fn c(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter("C_n needs n >= 2".into()));
        }
        Self::new(chain(n, Some((n - 2, -1, -2))), Family::C)
    }

    pub fn f4() -> Self {
        Self::new(chain(4, Some((1, -2, -1))), Family::F4).expect("static F4 matrix")
    }

    pub fn coroot_pairing(&self, coeffs: &[i32], i: usize) -> i32 {
        coeffs.iter().enumerate().map(|(k, &n)| n * self.cartan_matrix[k][i]).sum()
    }
}

// Linear Dynkin chain; `double` = (k, c_{k,k+1}, c_{k+1,k}).
fn chain(n: usize, double: Option<(usize, i32, i32)>) -> Vec<Vec<i32>> {
    let mut c = vec![vec![0; n]; n];
    for i in 0..n {
        c[i][i] = 2;
        if i + 1 < n {
            c[i][i + 1] = -1;
            c[i + 1][i] = -1;
        }
    }
    if let Some((k, up, down)) = double {
        c[k][k + 1] = up;
        c[k + 1][k] = down;
    }
    c
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Root {
    pub coeffs: Vec<i32>,
    pub height: i32,
}

impl Root {
    pub fn new(coeffs: Vec<i32>) -> Self {
        let height = coeffs.iter().sum();
        Self { coeffs, height }
    }

    pub fn neg(&self) -> Root {
        Root::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

pub(crate) fn add(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub(crate) fn sub(a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn neg(a: &[i32]) -> Vec<i32> {
    a.iter().map(|x| -x).collect()
}

fn axpy(k: i32, a: &[i32], b: &[i32]) -> Vec<i32> {
    a.iter().zip(b).map(|(x, y)| k * x + y).collect()
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub basis: SimpleBasis,
    pub positive_roots: Vec<Root>,
    pub max_root: Root,
    /// ⟨α_i, α_j⟩ on simple roots, Killing normalization.
    pub gram: Matrix,
    index: HashMap<Vec<i32>, usize>,
    /// N_{α,β} for ordered pairs of positive roots whose sum is a root.
    structure: Option<HashMap<(usize, usize), f64>>,
}

impl RootSystem {
    /// Positive roots by closure over root strings, plus the Killing Gram.
    pub fn generate(basis: &SimpleBasis) -> Result<Self> {
        let rank = basis.rank;
        let gram0 = symmetrized_cartan(basis)?;
        if Cholesky::new(gram0.clone()).is_none() {
            return Err(Error::InvalidCartan("symmetrized matrix is not positive definite".into()));
        }

        let mut roots: Vec<Vec<i32>> = (0..rank)
            .map(|i| (0..rank).map(|k| i32::from(k == i)).collect())
            .collect();
        let mut index: HashMap<Vec<i32>, usize> =
            roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let mut level: Vec<usize> = (0..rank).collect();
        // Finite types stay well below this; a runaway means a non-finite matrix.
        let height_cap = 64;
        let mut height = 1;
        while !level.is_empty() {
            if height > height_cap {
                return Err(Error::InvalidCartan("root closure does not terminate".into()));
            }
            let mut next: Vec<Vec<i32>> = Vec::new();
            for &bi in &level {
                let beta = roots[bi].clone();
                for i in 0..rank {
                    if beta.iter().enumerate().all(|(k, &n)| n == i32::from(k == i)) {
                        continue;
                    }
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if index.contains_key(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let q = p - basis.coroot_pairing(&beta, i);
                    if q > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if !index.contains_key(&up) && !next.contains(&up) {
                            next.push(up);
                        }
                    }
                }
            }
            next.sort();
            level = Vec::with_capacity(next.len());
            for r in next {
                index.insert(r.clone(), roots.len());
                level.push(roots.len());
                roots.push(r);
            }
            height += 1;
        }

        let mut positive_roots: Vec<Root> = roots.into_iter().map(Root::new).collect();
        positive_roots.sort_by(|a, b| a.height.cmp(&b.height).then_with(|| a.coeffs.cmp(&b.coeffs)));
        let index: HashMap<Vec<i32>, usize> = positive_roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.coeffs.clone(), i))
            .collect();
        let max_root = positive_roots.last().cloned().expect("at least one root");
        if positive_roots.iter().filter(|r| r.height == max_root.height).count() != 1 {
            return Err(Error::InvalidCartan("no unique maximal root; diagram not connected".into()));
        }

        // B|𝔱 is the trace form of ad², i.e. ⟨α,β⟩ = Σ_{γ∈Δ} ⟨α,γ⟩⟨β,γ⟩.
        let first = |r: &Root| -> f64 {
            let v: Vec<f64> = r.coeffs.iter().map(|&c| c as f64).collect();
            (0..rank).map(|j| gram0[(0, j)] * v[j]).sum()
        };
        let sum_sq: f64 = 2.0 * positive_roots.iter().map(|r| first(r).powi(2)).sum::<f64>();
        let scale = gram0[(0, 0)] / sum_sq;
        let gram = gram0 * scale;

        Ok(Self { basis: basis.clone(), positive_roots, max_root, gram, index, structure: None })
    }

    /// Convenience: generate and assign structure constants.
    pub fn signed(basis: &SimpleBasis) -> Result<Self> {
        Self::generate(basis)?.assign_structure_constants()
    }

    pub fn rank(&self) -> usize {
        self.basis.rank
    }

    pub fn killing_gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn is_signed(&self) -> bool {
        self.structure.is_some()
    }

    pub fn position(&self, coeffs: &[i32]) -> Option<usize> {
        self.index.get(coeffs).copied()
    }

    /// Whether `coeffs` is a root of either sign.
    pub fn is_root(&self, coeffs: &[i32]) -> bool {
        self.index.contains_key(coeffs) || self.index.contains_key(&neg(coeffs))
    }

    pub fn inner(&self, a: &[i32], b: &[i32]) -> f64 {
        let mut s = 0.0;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                s += (x * y) as f64 * self.gram[(i, j)];
            }
        }
        s
    }

    /// (p, q) such that β + nα is a root exactly for p ≤ n ≤ q.
    pub fn root_string(&self, alpha: &[i32], beta: &[i32]) -> Result<(i32, i32)> {
        if alpha == beta || alpha == neg(beta).as_slice() {
            return Err(Error::ProportionalRoots(format!("{alpha:?} and {beta:?}")));
        }
        let mut q = 0;
        while self.is_root(&axpy(q + 1, alpha, beta)) {
            q += 1;
        }
        let mut p = 0;
        while self.is_root(&axpy(p - 1, alpha, beta)) {
            p -= 1;
        }
        Ok((p, q))
    }

    pub fn n_magnitude(&self, alpha: &[i32], beta: &[i32]) -> Result<f64> {
        if !self.is_root(&add(alpha, beta)) {
            return Ok(0.0);
        }
        let (p, q) = self.root_string(alpha, beta)?;
        Ok((q as f64 * (1 - p) as f64 / 2.0 * self.inner(alpha, alpha)).sqrt())
    }

    /// Extraspecial-pair sign convention: for each positive root ξ = α + β
    /// the pair with the earliest α gets N > 0; every other decomposition
    /// follows from the Jacobi identity in the B(E_α, E_{-α}) = 1 normalization.
    pub fn assign_structure_constants(mut self) -> Result<Self> {
        self.structure = Some(HashMap::new());
        let np = self.positive_roots.len();
        for xi in 0..np {
            let target = self.positive_roots[xi].coeffs.clone();
            let mut pairs: Vec<(usize, usize)> = Vec::new();
            for a in 0..xi {
                let rest = sub(&target, &self.positive_roots[a].coeffs);
                if let Some(b) = self.position(&rest) {
                    if a < b {
                        pairs.push((a, b));
                    }
                }
            }
            if pairs.is_empty() {
                continue;
            }
            let (g0, d0) = pairs[0];
            let gamma = self.positive_roots[g0].coeffs.clone();
            let delta = self.positive_roots[d0].coeffs.clone();
            let n_extra = self.n_magnitude(&gamma, &delta)?;
            self.store(g0, d0, n_extra);
            for &(a, b) in &pairs[1..] {
                let alpha = self.positive_roots[a].coeffs.clone();
                let beta = self.positive_roots[b].coeffs.clone();
                let (mg, md) = (neg(&gamma), neg(&delta));
                let value = (self.n(&beta, &mg) * self.n(&alpha, &md)
                    + self.n(&mg, &alpha) * self.n(&beta, &md))
                    / n_extra;
                let magnitude = self.n_magnitude(&alpha, &beta)?;
                if (value.abs() - magnitude).abs() > 1e-9 * magnitude.max(1.0) {
                    return Err(Error::SignConvention(format!(
                        "|N({alpha:?},{beta:?})| = {} but string formula gives {magnitude}",
                        value.abs()
                    )));
                }
                self.store(a, b, magnitude.copysign(value));
            }
        }
        Ok(self)
    }

    fn store(&mut self, a: usize, b: usize, value: f64) {
        let table = self.structure.as_mut().expect("table initialized");
        table.insert((a, b), value);
        table.insert((b, a), -value);
    }

    /// N_{α,β} for arbitrary signed roots; zero when α + β is not a root.
    /// Panics if called before signs are assigned.
    pub fn n(&self, alpha: &[i32], beta: &[i32]) -> f64 {
        let table = self.structure.as_ref().expect("structure constants not assigned");
        let sum = add(alpha, beta);
        if sum.iter().all(|&c| c == 0) || !self.is_root(&sum) {
            return 0.0;
        }
        let pa = self.position(alpha);
        let pb = self.position(beta);
        match (pa, pb) {
            (Some(a), Some(b)) => table.get(&(a, b)).copied().unwrap_or(0.0),
            _ => {
                let na = self.position(&neg(alpha));
                let nb = self.position(&neg(beta));
                if let (Some(a), Some(b)) = (na, nb) {
                    return -table.get(&(a, b)).copied().unwrap_or(0.0);
                }
                // Mixed signs: γ = −(α+β) makes a zero-sum triple and one of
                // (β,γ), (γ,α) has equal signs.
                let gamma = neg(&sum);
                if self.position(&gamma).is_some() {
                    self.n(&gamma, alpha)
                } else {
                    self.n(beta, &gamma)
                }
            }
        }
    }

    /// All roots of both signs, positives first.
    pub fn all_roots(&self) -> Vec<Vec<i32>> {
        let mut out: Vec<Vec<i32>> = self.positive_roots.iter().map(|r| r.coeffs.clone()).collect();
        out.extend(self.positive_roots.iter().map(|r| neg(&r.coeffs)));
        out
    }
}

/// Symmetrized Cartan matrix G0_ij = c_ij ℓ_j / 2 with squared lengths ℓ
/// propagated over the Dynkin graph.
fn symmetrized_cartan(basis: &SimpleBasis) -> Result<Matrix> {
    let n = basis.rank;
    let c = &basis.cartan_matrix;
    let mut len: Vec<Option<f64>> = vec![None; n];
    len[0] = Some(2.0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let li = len[i].expect("visited");
        for j in 0..n {
            if i == j || c[i][j] == 0 {
                continue;
            }
            let lj = li * c[j][i] as f64 / c[i][j] as f64;
            match len[j] {
                None => {
                    len[j] = Some(lj);
                    queue.push_back(j);
                }
                Some(prev) if (prev - lj).abs() > 1e-12 * prev => {
                    return Err(Error::InvalidCartan("matrix is not symmetrizable".into()));
                }
                _ => {}
            }
        }
    }
    if len.iter().any(Option::is_none) {
        return Err(Error::InvalidCartan("Dynkin diagram is not connected".into()));
    }
    let len: Vec<f64> = len.into_iter().map(|l| l.expect("all visited")).collect();
    Ok(Matrix::from_fn(n, n, |i, j| c[i][j] as f64 * len[j] / 2.0))
}
