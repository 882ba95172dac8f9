//! Perron-Frobenius data, primitivity, eventual positivity and the power
//! index.

use crate::eigen::{cluster_eigenvalues, eigenvalues};
use crate::matcore::{mat_power, null_space, RealMatrix, Tolerance};
use crate::{Error, Result};

/// Relative modulus gap required for `ρ` to count as strictly dominant.
pub const DOMINANCE_MARGIN: f64 = 1e-8;

/// Spectral radius with its eigenvectors and the Perron-Frobenius flags.
#[derive(Debug, Clone, PartialEq)]
pub struct PerronReport {
    pub rho: f64,
    /// Unit 1-norm, largest-magnitude component positive. Empty when `ρ` is
    /// not an eigenvalue.
    pub right_vector: Vec<f64>,
    pub left_vector: Vec<f64>,
    /// `ρ > 0` and `ρ ∈ σ(A)`.
    pub rho_positive: bool,
    pub rho_simple: bool,
    pub rho_dominant: bool,
    pub right_positive: bool,
    pub left_positive: bool,
}

impl PerronReport {
    /// Strong Perron-Frobenius property of `A`.
    pub fn strong_pf(&self) -> bool {
        self.rho_positive && self.rho_simple && self.rho_dominant && self.right_positive
    }

    /// Strong Perron-Frobenius property of `A` and `A^T`.
    pub fn eventually_positive(&self) -> bool {
        self.strong_pf() && self.left_positive
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerIndexVerdict {
    Index(u64),
    ExceededCap,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerIndexResult {
    pub verdict: PowerIndexVerdict,
    /// Largest exponent confirmed positive (`k + n` for index `k`).
    pub witness_exponent: Option<u64>,
    pub cap_used: u64,
}

impl PowerIndexResult {
    pub fn index(&self) -> Option<u64> {
        match self.verdict {
            PowerIndexVerdict::Index(k) => Some(k),
            PowerIndexVerdict::ExceededCap => None,
        }
    }
}

pub fn spectral_radius_data(a: &RealMatrix, tol: &Tolerance) -> Result<PerronReport> {
    let n = a.ensure_square()?;
    let raw = eigenvalues(a, tol)?;
    let summary = cluster_eigenvalues(&raw, a.norm_inf(), tol)?;
    let rho = summary.spectral_radius();
    if rho <= tol.abs_eps {
        return Err(Error::ZeroSpectralRadius);
    }
    let perron = summary
        .eigenvalues
        .iter()
        .find(|e| e.is_real() && e.value.re > 0.0 && (e.value.re - rho).abs() <= DOMINANCE_MARGIN * rho);
    let Some(perron) = perron else {
        return Ok(PerronReport {
            rho,
            right_vector: Vec::new(),
            left_vector: Vec::new(),
            rho_positive: false,
            rho_simple: false,
            rho_dominant: false,
            right_positive: false,
            left_positive: false,
        });
    };
    let lambda = perron.value.re;
    let rho_dominant = summary
        .eigenvalues
        .iter()
        .filter(|e| e.value != perron.value)
        .all(|e| e.value.norm() <= rho * (1.0 - DOMINANCE_MARGIN));

    let mut shifted = a.clone();
    for i in 0..n {
        shifted[(i, i)] -= lambda;
    }
    let right = sign_normalize(null_space(&shifted, 1).remove(0));
    let left = sign_normalize(null_space(&shifted.transpose(), 1).remove(0));
    let positive = |v: &[f64]| v.iter().all(|&x| x > tol.abs_eps);
    Ok(PerronReport {
        rho: lambda,
        right_positive: positive(&right),
        left_positive: positive(&left),
        right_vector: right,
        left_vector: left,
        rho_positive: true,
        rho_simple: perron.multiplicity == 1,
        rho_dominant,
    })
}

fn sign_normalize(mut v: Vec<f64>) -> Vec<f64> {
    let norm1: f64 = v.iter().map(|x| x.abs()).sum();
    let lead = v.iter().copied().fold(0.0f64, |m, x| if x.abs() > m.abs() { x } else { m });
    let s = if lead < 0.0 { -1.0 } else { 1.0 } / norm1;
    v.iter_mut().for_each(|x| *x *= s);
    v
}

/// `ρ > 0` is a simple, strictly dominant eigenvalue with a positive right
/// eigenvector.
pub fn has_strong_pf_property(a: &RealMatrix, tol: &Tolerance) -> bool {
    spectral_radius_data(a, tol).is_ok_and(|r| r.strong_pf())
}

/// `A` and `A^T` both have the strong Perron-Frobenius property.
pub fn is_eventually_positive(a: &RealMatrix, tol: &Tolerance) -> bool {
    spectral_radius_data(a, tol).is_ok_and(|r| r.eventually_positive())
}

/// `max(n² - 2n + 2, 4n²)`.
pub fn default_power_cap(n: usize) -> u64 {
    let n = n as u64;
    (n * n + 2).saturating_sub(2 * n).max(4 * n * n)
}

/// Smallest `k ≤ cap` with `A^k, …, A^{k+n}` all entrywise positive.
///
/// Powers are rescaled by their largest entry at every step; positivity
/// means every entry of the rescaled power exceeds `abs_eps`.
pub fn power_index(a: &RealMatrix, cap: u64, tol: &Tolerance) -> Result<PowerIndexResult> {
    let n = a.ensure_square()?;
    if cap < 1 {
        return Err(Error::InvalidArgument("power-index cap must be >= 1".into()));
    }
    let window = n as u64;
    let mut power = RealMatrix::identity(n);
    let mut run_start: Option<u64> = None;
    let mut k = 0u64;
    loop {
        let positive = power.as_slice().iter().all(|&x| x > tol.abs_eps);
        match (positive, run_start) {
            (true, None) if k <= cap => run_start = Some(k),
            (true, _) => {}
            (false, _) => run_start = None,
        }
        if let Some(start) = run_start {
            if k - start == window {
                return Ok(PowerIndexResult {
                    verdict: PowerIndexVerdict::Index(start),
                    witness_exponent: Some(k),
                    cap_used: cap,
                });
            }
        }
        if run_start.is_none() && k >= cap {
            break;
        }
        power = &power * a;
        let m = power.max_abs();
        if m == 0.0 || !m.is_finite() {
            break;
        }
        power = power.scale(1.0 / m);
        k += 1;
    }
    Ok(PowerIndexResult {
        verdict: PowerIndexVerdict::ExceededCap,
        witness_exponent: None,
        cap_used: cap,
    })
}

/// Primitivity of a nonnegative matrix, decided by the power index within
/// Wielandt's bound `n² - 2n + 2`.
pub fn is_primitive(a: &RealMatrix, tol: &Tolerance) -> Result<bool> {
    let n = a.ensure_square()?;
    for i in 0..n {
        for j in 0..n {
            let v = a[(i, j)];
            if v < -tol.abs_eps {
                return Err(Error::NotNonnegative { row: i, col: j, value: v });
            }
        }
    }
    let clamped = a.map(|x: f64| x.max(0.0));
    let cap = ((n * n + 2).saturating_sub(2 * n)).max(1) as u64;
    Ok(power_index(&clamped, cap, tol)?.index().is_some())
}

fn rows_sum_to_one(a: &RealMatrix, eps: f64) -> bool {
    a.row_sums().iter().all(|s| (s - 1.0).abs() <= eps)
}

pub fn is_stochastic(a: &RealMatrix, tol: &Tolerance) -> bool {
    a.is_square()
        && a.as_slice().iter().all(|&x| x >= -tol.abs_eps)
        && rows_sum_to_one(a, tol.abs_eps)
}

/// Eventually positive with unit row sums. The row sums of the witness
/// power are checked as well when the power index is found within `cap`.
pub fn is_eventually_stochastic(a: &RealMatrix, tol: &Tolerance, cap: u64) -> Result<bool> {
    a.ensure_square()?;
    if !rows_sum_to_one(a, tol.abs_eps) || !is_eventually_positive(a, tol) {
        return Ok(false);
    }
    match power_index(a, cap, tol)?.index() {
        Some(k) => {
            let ak = mat_power(a, k)?;
            Ok(rows_sum_to_one(&ak, tol.abs_eps * (k as f64 + 1.0)))
        }
        None => Ok(true),
    }
}
