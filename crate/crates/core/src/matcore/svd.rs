//! Rank and null-space helpers on top of nalgebra's SVD.

use super::{Matrix, Scalar};

pub(crate) struct SortedSvd<T> {
    /// Descending.
    pub sigma: Vec<f64>,
    /// Right singular vectors, aligned with `sigma`.
    pub right: Vec<Vec<T>>,
}

pub(crate) fn svd_sorted<T: Scalar>(m: &Matrix<T>) -> SortedSvd<T> {
    let (rows, cols) = (m.rows(), m.cols());
    // Thin SVD of a wide matrix drops part of the null space; pad to square.
    let padded;
    let m = if rows < cols {
        let mut p = Matrix::zeros(cols, cols);
        p.set_block(0, 0, m);
        padded = p;
        &padded
    } else {
        m
    };
    let svd = m.to_nalgebra().svd(false, true);
    let v_t = svd.v_t.expect("requested V");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let sigma = order.iter().map(|&i| svd.singular_values[i]).collect();
    let right = order
        .iter()
        .map(|&i| (0..cols).map(|j| v_t[(i, j)].conjugate()).collect())
        .collect();
    SortedSvd { sigma, right }
}

pub fn singular_values<T: Scalar>(m: &Matrix<T>) -> Vec<f64> {
    svd_sorted(m).sigma
}

/// Number of singular values above `threshold`.
pub fn rank_above<T: Scalar>(m: &Matrix<T>, threshold: f64) -> usize {
    singular_values(m).iter().filter(|&&s| s > threshold).count()
}

/// Right singular vectors for the `dim` smallest singular values.
pub fn null_space<T: Scalar>(m: &Matrix<T>, dim: usize) -> Vec<Vec<T>> {
    let svd = svd_sorted(m);
    let n = svd.right.len();
    svd.right[n - dim.min(n)..].to_vec()
}
