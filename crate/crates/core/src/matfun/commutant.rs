use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::matcore::{mat_inv, null_space, singular_values, RealMatrix, Tolerance};
use crate::rjcf::RealJordanDecomposition;
use crate::{Error, Result};

/// Draws attempted by [`sample_commutant`] before giving up.
pub const COMMUTANT_ATTEMPTS: usize = 16;

/// Commutation bound `||U J_R - J_R U||_inf <= 1e-10 * max(1, ||U||_inf)`.
const COMMUTATION_REL: f64 = 1e-10;

/// Singular values of the commutation operator below this fraction of the
/// largest one span the commutant.
const NULL_REL: f64 = 1e-9;

/// A nonsingular real `U` commuting with `J_R`.
#[derive(Debug, Clone, PartialEq)]
pub struct CommutantParameter {
    u: RealMatrix,
    seed: Option<u64>,
}

impl CommutantParameter {
    /// Checks that `u` commutes with `J_R` and is invertible.
    pub fn new(u: RealMatrix, decomp: &RealJordanDecomposition, tol: &Tolerance) -> Result<Self> {
        Self::checked(u, None, decomp, tol)
    }

    fn checked(u: RealMatrix, seed: Option<u64>, decomp: &RealJordanDecomposition, tol: &Tolerance) -> Result<Self> {
        let n = decomp.n();
        if u.rows() != n || u.cols() != n {
            return Err(Error::InvalidCommutant(format!(
                "U is {}x{}, expected {n}x{n}",
                u.rows(),
                u.cols()
            )));
        }
        let j = decomp.j_real();
        let gap = (&(&u * &j) - &(&j * &u)).norm_inf();
        let bound = COMMUTATION_REL * u.norm_inf().max(1.0);
        if gap > bound {
            return Err(Error::InvalidCommutant(format!(
                "||U J - J U|| = {gap:.3e} exceeds {bound:.3e}"
            )));
        }
        mat_inv(&u, tol).map_err(|_| Error::InvalidCommutant("U is singular".into()))?;
        Ok(Self { u, seed })
    }

    pub fn u(&self) -> &RealMatrix {
        &self.u
    }

    /// Seed of the draw, for sampled parameters.
    pub fn seed(&self) -> Option<u64> {
        self.seed
    }
}

/// Basis of `{U : U J_R = J_R U}`, from the null space of
/// `J_R^T ⊗ I - I ⊗ J_R` acting on column-major `vec(U)`.
pub fn commutant_basis(decomp: &RealJordanDecomposition) -> Vec<RealMatrix> {
    let j = decomp.j_real();
    let n = j.rows();
    let nn = n * n;
    let mut op = RealMatrix::zeros(nn, nn);
    for col in 0..n {
        for row in 0..n {
            let eq = row + col * n;
            for l in 0..n {
                // (U J)[row, col] = Σ U[row, l] J[l, col]
                op[(eq, row + l * n)] += j[(l, col)];
                // (J U)[row, col] = Σ J[row, l] U[l, col]
                op[(eq, l + col * n)] -= j[(row, l)];
            }
        }
    }
    let sigma = singular_values(&op);
    let cutoff = NULL_REL * sigma.first().copied().unwrap_or(0.0).max(1.0);
    let dim = sigma.iter().filter(|&&s| s <= cutoff).count();
    null_space(&op, dim)
        .into_iter()
        .map(|v| {
            let mut u = RealMatrix::zeros(n, n);
            for (idx, x) in v.into_iter().enumerate() {
                u[(idx % n, idx / n)] = if x.abs() < 1e-14 { 0.0 } else { x };
            }
            u
        })
        .collect()
}

/// Random nonsingular element of the commutant of `J_R`: a combination of
/// [`commutant_basis`] with coefficients uniform in `[-1, 1]` from a
/// ChaCha stream seeded by `seed`. Singular draws are retried.
pub fn sample_commutant(decomp: &RealJordanDecomposition, seed: u64, tol: &Tolerance) -> Result<CommutantParameter> {
    let basis = commutant_basis(decomp);
    let n = decomp.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..COMMUTANT_ATTEMPTS {
        let mut u = RealMatrix::zeros(n, n);
        for b in &basis {
            let c: f64 = rng.random_range(-1.0..=1.0);
            u = &u + &b.scale(c);
        }
        if let Ok(param) = CommutantParameter::checked(u, Some(seed), decomp, tol) {
            return Ok(param);
        }
    }
    Err(Error::CommutantSingular {
        attempts: COMMUTANT_ATTEMPTS,
        dimension: basis.len(),
    })
}
