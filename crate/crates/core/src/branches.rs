//! Branches of the scalar p-th root and their derivatives.
//!
//! For `z = r e^{iθ}` with `θ ∈ (-π, π]` the `(j+1)`-st branch is
//! `f_j(z) = r^{1/p} exp(i(θ + 2πj)/p)`. Negative reals take `θ = π`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

/// Largest derivative order accepted by [`branch_derivative`].
pub const MAX_DERIVATIVE_ORDER: usize = 64;

/// A branch index `j ∈ {0, …, p-1}` of the p-th root, `p ≥ 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BranchIndex {
    j: usize,
    p: usize,
}

impl BranchIndex {
    pub fn new(j: usize, p: usize) -> Result<Self> {
        if p < 2 {
            return Err(Error::InvalidArgument(format!("root order p must be >= 2, got {p}")));
        }
        if j >= p {
            return Err(Error::InvalidArgument(format!(
                "branch index {j} out of range for p = {p}"
            )));
        }
        Ok(Self { j, p })
    }

    pub fn principal(p: usize) -> Result<Self> {
        Self::new(0, p)
    }

    pub fn j(self) -> usize {
        self.j
    }

    pub fn p(self) -> usize {
        self.p
    }
}

/// Polar form with the argument in `(-π, π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarScalar {
    pub r: f64,
    pub theta: f64,
}

impl PolarScalar {
    pub fn from_complex(z: Complex64) -> Result<Self> {
        let r = z.norm();
        if r == 0.0 || !r.is_finite() {
            return Err(Error::ZeroArgument);
        }
        // atan2 returns -π for (-x, -0.0); fold it onto +π.
        let theta = if z.im == 0.0 && z.re < 0.0 {
            PI
        } else {
            z.im.atan2(z.re)
        };
        Ok(Self { r, theta })
    }
}

pub fn branch_value(z: Complex64, branch: BranchIndex) -> Result<Complex64> {
    branch_derivative(z, branch, 0)
}

/// k-th derivative of the branch `f_j` at `z`:
/// `p^{-k} ∏_{i<k} (1 - ip) · r^{(1-kp)/p} · exp(i[2πj + θ(1-kp)]/p)`.
pub fn branch_derivative(z: Complex64, branch: BranchIndex, k: usize) -> Result<Complex64> {
    if k > MAX_DERIVATIVE_ORDER {
        return Err(Error::InvalidArgument(format!(
            "derivative order {k} exceeds {MAX_DERIVATIVE_ORDER}"
        )));
    }
    let PolarScalar { r, theta } = PolarScalar::from_complex(z)?;
    let p = branch.p as f64;
    let kf = k as f64;
    let coeff: f64 = (0..k).map(|i| (1.0 - i as f64 * p) / p).product();
    let modulus = r.powf((1.0 - kf * p) / p);
    let phase = (2.0 * PI * branch.j as f64 + theta * (1.0 - kf * p)) / p;
    Ok(Complex64::from_polar(coeff * modulus, phase))
}

/// `j + j' ≡ 0 (mod p)`: `f_j^{(k)}(z)` equals `conj(f_{j'}^{(k)}(conj z))`
/// off the real axis exactly when this holds.
pub fn conjugate_branch_condition(j: usize, j_prime: usize, p: usize) -> bool {
    (j + j_prime).is_multiple_of(p)
}

/// `j + j' = p - 1`: the conjugacy condition on the negative real axis.
pub fn negative_axis_branch_condition(j: usize, j_prime: usize, p: usize) -> bool {
    j + j_prime == p - 1
}

/// Branch indices whose value at the nonzero real `lambda` is real.
///
/// Positive `lambda`: `0`, plus `p/2` for even `p`. Negative `lambda`:
/// `(p-1)/2` for odd `p`, none for even `p`.
pub fn real_branch_indices(lambda: f64, p: usize) -> Vec<usize> {
    match (lambda > 0.0, p.is_multiple_of(2)) {
        (true, true) => vec![0, p / 2],
        (true, false) => vec![0],
        (false, true) => vec![],
        (false, false) => vec![(p - 1) / 2],
    }
}
