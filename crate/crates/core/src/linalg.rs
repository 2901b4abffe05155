//! Small dense linear-algebra helpers on top of `nalgebra`.

use nalgebra::{DMatrix, DVector, Matrix4, Matrix6};

pub type Mat4 = Matrix4<f64>;
pub type Mat6 = Matrix6<f64>;

/// Largest absolute entry.
pub fn max_abs<R, C, S>(m: &nalgebra::Matrix<f64, R, C, S>) -> f64
where
    R: nalgebra::Dim,
    C: nalgebra::Dim,
    S: nalgebra::RawStorage<f64, R, C>,
{
    m.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
}

/// Numerical rank from singular values: `σ > tol · max(σ_max, 1)`.
pub fn rank(m: &DMatrix<f64>, tol: f64) -> usize {
    if m.is_empty() {
        return 0;
    }
    let sv = m.clone().svd(false, false).singular_values;
    let scale = sv.iter().cloned().fold(1.0_f64, f64::max);
    sv.iter().filter(|&&s| s > tol * scale).count()
}

/// Orthonormal basis (as columns) of the column space of `m`.
pub fn column_space(m: &DMatrix<f64>, tol: f64) -> DMatrix<f64> {
    let nrows = m.nrows();
    if m.ncols() == 0 {
        return DMatrix::zeros(nrows, 0);
    }
    let svd = m.clone().svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let scale = svd.singular_values.iter().cloned().fold(1.0_f64, f64::max);
    let keep: Vec<usize> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > tol * scale)
        .map(|(i, _)| i)
        .collect();
    DMatrix::from_fn(nrows, keep.len(), |r, c| u[(r, keep[c])])
}

/// Euclidean distance from `v` to the column space of `basis`, where the
/// columns of `basis` need not be orthonormal.
pub fn span_residual(basis: &DMatrix<f64>, v: &DVector<f64>) -> f64 {
    let q = column_space(basis, 1e-12);
    let proj = &q * (q.transpose() * v);
    (v - proj).norm()
}

/// Counts of (positive, negative, zero) eigenvalues of a symmetric matrix,
/// with zero meaning `|λ| ≤ tol · max(|λ|_max, 1)`.
pub fn inertia(m: &DMatrix<f64>, tol: f64) -> (usize, usize, usize) {
    let eig = m.clone().symmetric_eigen();
    let scale = eig.eigenvalues.iter().fold(1.0_f64, |a, x| a.max(x.abs()));
    let mut counts = (0, 0, 0);
    for &l in eig.eigenvalues.iter() {
        if l.abs() <= tol * scale {
            counts.2 += 1;
        } else if l > 0.0 {
            counts.0 += 1;
        } else {
            counts.1 += 1;
        }
    }
    counts
}

/// Largest principal-angle sine between two subspaces given by orthonormal
/// column bases. Returns 1.0 when the dimensions differ.
pub fn subspace_distance(q1: &DMatrix<f64>, q2: &DMatrix<f64>) -> f64 {
    if q1.ncols() != q2.ncols() {
        return 1.0;
    }
    let proj = q2 * (q2.transpose() * q1);
    let resid = q1 - proj;
    if resid.ncols() == 0 {
        return 0.0;
    }
    resid.svd(false, false).singular_values.max()
}

pub fn mat6_from_dmatrix(m: &DMatrix<f64>) -> Mat6 {
    Mat6::from_fn(|r, c| m[(r, c)])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_inertia() {
        let m = DMatrix::from_row_slice(3, 3, &[1.0, 0.0, 0.0, 0.0, -2.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(rank(&m, 1e-12), 2);
        assert_eq!(inertia(&m, 1e-12), (1, 1, 1));
    }

    #[test]
    fn residual_to_plane() {
        let basis = DMatrix::from_column_slice(3, 2, &[1.0, 0.0, 0.0, 1.0, 1.0, 0.0]);
        let v = DVector::from_vec(vec![3.0, -1.0, 2.0]);
        assert!((span_residual(&basis, &v) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn subspace_distance_detects_equal_spans() {
        let a = column_space(&DMatrix::from_column_slice(3, 2, &[1.0, 1.0, 0.0, 1.0, -1.0, 0.0]), 1e-12);
        let b = column_space(&DMatrix::from_column_slice(3, 2, &[1.0, 0.0, 0.0, 0.0, 1.0, 0.0]), 1e-12);
        assert!(subspace_distance(&a, &b) < 1e-12);
        let c = column_space(&DMatrix::from_column_slice(3, 2, &[1.0, 0.0, 0.0, 0.0, 0.0, 1.0]), 1e-12);
        assert!(subspace_distance(&a, &c) > 0.5);
    }
}
