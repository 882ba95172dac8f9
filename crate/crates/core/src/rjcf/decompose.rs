use num_complex::Complex64;

use super::{RealBlockSpec, RealJordanDecomposition};
use crate::eigen::analyze_spectrum;
use crate::matcore::{null_space, Matrix, RealMatrix, Scalar, Tolerance};
use crate::{Error, Result};

/// Reconstruction bound for computed decompositions, relative to
/// `max(1, ||A||_inf)`.
const RECONSTRUCTION_REL: f64 = 1e-6;

/// A chain residual below this (for unit candidates) means the kernels did
/// not nest as the rank sequence promised.
const MIN_RESIDUAL: f64 = 1e-4;

/// Computes `A = R J_R R^-1` numerically.
///
/// Eigenvalues come from a Schur form, block sizes from rank sequences and
/// Jordan chains from SVD null spaces of powers of `A - λI`. Real blocks are
/// listed by eigenvalue (descending) then size; conjugate pairs follow by
/// modulus. A simple real eigenvalue gets a column of unit 1-norm whose
/// largest entry is positive.
pub fn real_jordan_decompose(a: &RealMatrix, tol: &Tolerance) -> Result<RealJordanDecomposition> {
    let n = a.ensure_square()?;
    let (summary, structure) = analyze_spectrum(a, tol)?;
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut real_blocks = Vec::new();
    let mut pair_blocks = Vec::new();
    let mut pair_columns: Vec<Vec<f64>> = Vec::new();

    for e in &summary.eigenvalues {
        if e.value.im < 0.0 {
            continue;
        }
        let sizes = structure
            .sizes(e.value)
            .ok_or(Error::InconsistentRanks {
                eigenvalue: e.value,
                detail: "no block sizes".into(),
            })?
            .to_vec();
        if e.value.im == 0.0 {
            let lambda = e.value.re;
            let chains = jordan_chains(&shift(a, lambda), &sizes, e.value)?;
            for chain in chains {
                let k = chain.len();
                if k == 1 && sizes.len() == 1 {
                    columns.push(perron_normalize(chain.into_iter().next().unwrap()));
                } else {
                    columns.extend(chain);
                }
                real_blocks.push(RealBlockSpec::RealEigenBlock { lambda, k });
            }
        } else {
            let chains = jordan_chains(&shift(&a.to_complex(), e.value), &sizes, e.value)?;
            for chain in chains {
                let k = chain.len();
                for v in chain {
                    pair_columns.push(v.iter().map(|z| z.re).collect());
                    pair_columns.push(v.iter().map(|z| z.im).collect());
                }
                pair_blocks.push(RealBlockSpec::ComplexPairBlock { lambda: e.value, k });
            }
        }
    }
    columns.extend(pair_columns);
    real_blocks.extend(pair_blocks);

    let mut r = RealMatrix::zeros(n, n);
    for (j, col) in columns.iter().enumerate() {
        r.set_column(j, col);
    }
    RealJordanDecomposition::validated(a, r, real_blocks, RECONSTRUCTION_REL, tol)
}

fn shift<T: Scalar>(a: &Matrix<T>, lambda: T) -> Matrix<T> {
    let mut m = a.clone();
    for i in 0..a.rows() {
        m[(i, i)] -= lambda;
    }
    m
}

fn perron_normalize(mut v: Vec<f64>) -> Vec<f64> {
    let norm1: f64 = v.iter().map(|x| x.abs()).sum();
    let lead = v.iter().copied().fold(0.0f64, |m, x| if x.abs() > m.abs() { x } else { m });
    let s = lead.signum() / norm1;
    v.iter_mut().for_each(|x| *x *= s);
    v
}

fn dot<T: Scalar>(u: &[T], v: &[T]) -> T {
    u.iter().zip(v).fold(T::zero(), |acc, (&a, &b)| acc + a.conjugate() * b)
}

fn norm<T: Scalar>(v: &[T]) -> f64 {
    v.iter().map(|x| x.modulus_squared()).sum::<f64>().sqrt()
}

fn apply<T: Scalar>(m: &Matrix<T>, v: &[T]) -> Vec<T> {
    (0..m.rows())
        .map(|i| m.row(i).iter().zip(v).fold(T::zero(), |acc, (&a, &b)| acc + a * b))
        .collect()
}

/// Component of `c` orthogonal to the orthonormal set `basis`
/// (two Gram-Schmidt passes).
fn residual<T: Scalar>(basis: &[Vec<T>], c: &[T]) -> Vec<T> {
    let mut r = c.to_vec();
    for _ in 0..2 {
        for u in basis {
            let h = dot(u, &r);
            for (ri, &ui) in r.iter_mut().zip(u) {
                *ri -= ui * h;
            }
        }
    }
    r
}

fn push_orthonormal<T: Scalar>(basis: &mut Vec<Vec<T>>, v: &[T]) {
    let r = residual(basis, v);
    let nr = norm(&r);
    if nr > MIN_RESIDUAL * norm(v).max(f64::MIN_POSITIVE) {
        let s = T::from_real(1.0 / nr);
        basis.push(r.into_iter().map(|x| x * s).collect());
    }
}

/// Jordan chains `v_1 = N^{k-1} t, …, v_k = t` for the block sizes of one
/// eigenvalue (largest first), where `N = A - λI`.
///
/// Chain tops are picked from `ker N^q` greedily, longest chains first,
/// keeping each new top away from `ker N^{q-1}` and from the tails of the
/// chains already chosen.
fn jordan_chains<T: Scalar>(nmat: &Matrix<T>, sizes: &[usize], eigenvalue: Complex64) -> Result<Vec<Vec<Vec<T>>>> {
    let longest = sizes.first().copied().unwrap_or(0);
    let mut kernels: Vec<Vec<Vec<T>>> = vec![Vec::new()];
    let mut power = Matrix::<T>::identity(nmat.rows());
    for q in 1..=longest {
        power = &power * nmat;
        let dim: usize = sizes.iter().map(|&s| s.min(q)).sum();
        kernels.push(null_space(&power, dim));
    }

    // (length, top)
    let mut tops: Vec<(usize, Vec<T>)> = Vec::new();
    for q in (1..=longest).rev() {
        let wanted = sizes.iter().filter(|&&s| s == q).count();
        if wanted == 0 {
            continue;
        }
        let mut basis: Vec<Vec<T>> = Vec::new();
        for v in &kernels[q - 1] {
            push_orthonormal(&mut basis, v);
        }
        for (len, t) in &tops {
            let mut w = t.clone();
            for _ in 0..len - q {
                w = apply(nmat, &w);
            }
            push_orthonormal(&mut basis, &w);
        }
        for _ in 0..wanted {
            let best = kernels[q]
                .iter()
                .map(|c| residual(&basis, c))
                .map(|r| (norm(&r), r))
                .max_by(|x, y| x.0.total_cmp(&y.0))
                .ok_or(Error::ChainExtraction { eigenvalue })?;
            if best.0 < MIN_RESIDUAL {
                return Err(Error::ChainExtraction { eigenvalue });
            }
            let s = T::from_real(1.0 / best.0);
            let top: Vec<T> = best.1.into_iter().map(|x| x * s).collect();
            basis.push(top.clone());
            tops.push((q, top));
        }
    }

    Ok(tops
        .into_iter()
        .map(|(len, top)| {
            let mut chain = vec![top];
            for _ in 1..len {
                let next = apply(nmat, chain.last().unwrap());
                chain.push(next);
            }
            chain.reverse();
            let biggest = chain.iter().map(|v| norm(v)).fold(0.0, f64::max);
            let s = T::from_real(1.0 / biggest);
            chain
                .into_iter()
                .map(|v| v.into_iter().map(|x| x * s).collect())
                .collect()
        })
        .collect())
}
