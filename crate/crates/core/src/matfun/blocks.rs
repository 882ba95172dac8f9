use num_complex::Complex64;

use super::{pair_is_real, PairIndex, RootMatrix};
use crate::branches::{branch_derivative, BranchIndex};
use crate::matcore::ComplexMatrix;
use crate::rjcf::{interleave_permutation, pairing_similarity, pairing_similarity_inverse};
use crate::{Error, Result};

/// `f_j(J_k(λ))`: upper-triangular Toeplitz with `f_j^{(d)}(λ)/d!` on the
/// d-th superdiagonal.
pub fn branch_on_jordan_block(lambda: Complex64, k: usize, p: usize, j: usize) -> Result<ComplexMatrix> {
    if k == 0 {
        return Err(Error::InvalidArgument("block size must be >= 1".into()));
    }
    let branch = BranchIndex::new(j, p)?;
    let mut coeffs = Vec::with_capacity(k);
    let mut factorial = 1.0;
    for d in 0..k {
        if d > 0 {
            factorial *= d as f64;
        }
        coeffs.push(branch_derivative(lambda, branch, d)? / factorial);
    }
    let mut m = ComplexMatrix::zeros(k, k);
    for i in 0..k {
        for d in 0..k - i {
            m[(i, i + d)] = coeffs[d];
        }
    }
    Ok(m)
}

/// `S_k P_k [f_{j1}(J_k(λ)) ⊕ f_{j2}(J_k(λ̄))] P_k^T S_k^-1` as a complex
/// matrix, with whether the branch condition for a real result holds.
pub(crate) fn pair_block_complex(lambda: Complex64, k: usize, p: usize, pair: PairIndex) -> Result<(ComplexMatrix, bool)> {
    let upper = branch_on_jordan_block(lambda, k, p, pair.j1)?;
    let lower = branch_on_jordan_block(lambda.conj(), k, p, pair.j2)?;
    let perm = interleave_permutation(k).to_complex();
    let inner = &(&perm * &ComplexMatrix::direct_sum(&[upper, lower])) * &perm.transpose();
    let f = &(&pairing_similarity(k) * &inner) * &pairing_similarity_inverse(k);
    Ok((f, pair_is_real(lambda, pair, p)))
}

/// The 2k×2k block function on `C_k(λ)`. Real when the conjugacy condition
/// for `λ` holds (`j1 + j2 ≡ 0 mod p` off the axis, `j1 + j2 = p - 1` for
/// negative `λ`); complex otherwise.
pub fn branch_pair_on_complex_block(lambda: Complex64, k: usize, p: usize, pair: PairIndex) -> Result<RootMatrix> {
    let (f, real_ok) = pair_block_complex(lambda, k, p, pair)?;
    Ok(RootMatrix::from_complex(f, real_ok))
}
