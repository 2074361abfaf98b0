//! Small dense linear-algebra helpers over a non-standard inner product.
//!
//! Vectors live in ambient coordinates; the inner product is given by a
//! symmetric positive definite Gram matrix.

use nalgebra::{SymmetricEigen, SVD};

use crate::{Matrix, Vector};

pub fn inner(gram: &Matrix, u: &Vector, v: &Vector) -> f64 {
    u.dot(&(gram * v))
}

pub fn norm(gram: &Matrix, u: &Vector) -> f64 {
    inner(gram, u, u).max(0.0).sqrt()
}

/// Modified Gram–Schmidt in the given order. Candidates whose residual norm
/// falls below `drop_tol` are skipped, so the output spans the same space.
pub fn orthonormalize(gram: &Matrix, candidates: &[Vector], drop_tol: f64) -> Vec<Vector> {
    let mut basis: Vec<Vector> = Vec::new();
    for c in candidates {
        let mut w = c.clone();
        for _ in 0..2 {
            for b in &basis {
                let proj = inner(gram, b, &w);
                w.axpy(-proj, b, 1.0);
            }
        }
        let n = norm(gram, &w);
        if n > drop_tol {
            basis.push(w / n);
        }
    }
    basis
}

/// Orthonormal basis of span(candidates) of size `count`, choosing at each
/// step the candidate with the largest remaining component (earliest index
/// on ties). Deterministic for a fixed candidate order.
pub fn pivoted_basis(gram: &Matrix, candidates: &[Vector], count: usize) -> Vec<Vector> {
    let mut residual: Vec<Vector> = candidates.to_vec();
    let mut basis: Vec<Vector> = Vec::with_capacity(count);
    while basis.len() < count {
        let mut best: Option<(usize, f64)> = None;
        for (i, r) in residual.iter().enumerate() {
            let n = norm(gram, r);
            if best.is_none_or(|(_, b)| n > b) {
                best = Some((i, n));
            }
        }
        let Some((i, n)) = best else { break };
        if n <= 0.0 {
            break;
        }
        let mut b = residual[i].clone() / n;
        // One re-orthogonalization pass against the accepted vectors.
        for prev in &basis {
            let p = inner(gram, prev, &b);
            b.axpy(-p, prev, 1.0);
        }
        let b = b.clone() / norm(gram, &b);
        for r in residual.iter_mut() {
            let p = inner(gram, &b, r);
            r.axpy(-p, &b, 1.0);
        }
        basis.push(b);
    }
    basis
}

/// Coefficients of `v` against an orthonormal basis.
pub fn coordinates(gram: &Matrix, basis: &[Vector], v: &Vector) -> Vector {
    let gv = gram * v;
    Vector::from_iterator(basis.len(), basis.iter().map(|b| b.dot(&gv)))
}

/// Orthogonal projection onto the span of an orthonormal basis.
pub fn project(gram: &Matrix, basis: &[Vector], v: &Vector) -> Vector {
    let gv = gram * v;
    let mut out = Vector::zeros(v.len());
    for b in basis {
        out.axpy(b.dot(&gv), b, 1.0);
    }
    out
}

/// Matrix of a linear operator restricted to an orthonormal basis:
/// `M_ij = ⟨b_i, op(b_j)⟩`.
pub fn restricted_matrix<F>(gram: &Matrix, basis: &[Vector], op: F) -> Matrix
where
    F: Fn(&Vector) -> Vector,
{
    let d = basis.len();
    let images: Vec<Vector> = basis.iter().map(|b| gram * op(b)).collect();
    Matrix::from_fn(d, d, |i, j| basis[i].dot(&images[j]))
}

/// Eigenvalues (ascending) and eigenvectors of a symmetric matrix.
pub fn symmetric_eigen(m: &Matrix) -> (Vec<f64>, Matrix) {
    let sym = (m + m.transpose()) * 0.5;
    let eig = SymmetricEigen::new(sym);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = Matrix::from_fn(m.nrows(), order.len(), |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Orthonormal (Euclidean) basis of the null space of `a`, using singular
/// values below `tol · max(1, σ_max)`.
pub fn null_space(a: &Matrix, tol: f64) -> Vec<Vector> {
    let cols = a.ncols();
    if cols == 0 {
        return Vec::new();
    }
    // Pad so the SVD always returns a full right-singular basis.
    let rows = a.nrows().max(cols);
    let mut padded = Matrix::zeros(rows, cols);
    padded.view_mut((0, 0), (a.nrows(), cols)).copy_from(a);
    let svd = SVD::new(padded, false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let sigma_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cutoff = tol * sigma_max.max(1.0);
    svd.singular_values
        .iter()
        .enumerate()
        .filter(|(_, s)| **s <= cutoff)
        .map(|(i, _)| v_t.row(i).transpose())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gram_schmidt_under_weighted_product() {
        let gram = Matrix::from_row_slice(2, 2, &[2.0, 1.0, 1.0, 2.0]);
        let cands = vec![
            Vector::from_vec(vec![1.0, 0.0]),
            Vector::from_vec(vec![2.0, 0.0]),
            Vector::from_vec(vec![0.0, 1.0]),
        ];
        let b = orthonormalize(&gram, &cands, 1e-12);
        assert_eq!(b.len(), 2);
        assert!((inner(&gram, &b[0], &b[0]) - 1.0).abs() < 1e-14);
        assert!(inner(&gram, &b[0], &b[1]).abs() < 1e-14);
        let v = Vector::from_vec(vec![0.3, -0.7]);
        assert!((project(&gram, &b, &v) - &v).norm() < 1e-14);
    }

    #[test]
    fn null_space_of_rank_one() {
        let a = Matrix::from_row_slice(1, 3, &[1.0, 1.0, 0.0]);
        let ns = null_space(&a, 1e-10);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!((&a * v).norm() < 1e-12);
        }
    }

    #[test]
    fn eigen_sorted() {
        let m = Matrix::from_row_slice(2, 2, &[3.0, 0.0, 0.0, -1.0]);
        let (vals, vecs) = symmetric_eigen(&m);
        assert_eq!(vals, vec![-1.0, 3.0]);
        assert!((vecs[(1, 0)].abs() - 1.0).abs() < 1e-14);
    }
}
