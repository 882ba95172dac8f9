use super::blocks::{branch_on_jordan_block, pair_block_complex};
use super::{BranchAssignment, CommutantParameter, RootMatrix, RootReport};
use crate::eigen::pth_root_exists;
use crate::matcore::{mat_inv, mat_power, ComplexMatrix, RealMatrix, Tolerance};
use crate::perron::{default_power_cap, is_eventually_positive, is_eventually_stochastic, power_index};
use crate::rjcf::{jordan_block, RealBlockSpec, RealJordanDecomposition};
use crate::{Complex64, Error, Result};

/// Re-validates `assignment` against `decomp`, recomputing `primary`.
fn checked(decomp: &RealJordanDecomposition, assignment: &BranchAssignment) -> Result<BranchAssignment> {
    BranchAssignment::new(
        decomp,
        assignment.p,
        assignment.real_indices.clone(),
        assignment.pair_indices.clone(),
    )
}

/// Block-diagonal `⊕ f_j(block)` in decomposition order. Zero blocks map to
/// zero when `zero_blocks_vanish`.
fn block_functions(decomp: &RealJordanDecomposition, assignment: &BranchAssignment, zero_blocks_vanish: bool) -> Result<ComplexMatrix> {
    let p = assignment.p;
    let mut reals = assignment.real_indices.iter();
    let mut pairs = assignment.pair_indices.iter();
    let mut parts = Vec::with_capacity(decomp.blocks().len());
    for b in decomp.blocks() {
        match *b {
            RealBlockSpec::RealEigenBlock { lambda, k } => {
                let j = *reals.next().expect("checked count");
                if lambda == 0.0 && zero_blocks_vanish {
                    parts.push(ComplexMatrix::zeros(k, k));
                } else {
                    parts.push(branch_on_jordan_block(Complex64::new(lambda, 0.0), k, p, j)?);
                }
            }
            RealBlockSpec::ComplexPairBlock { lambda, k } => {
                let q = *pairs.next().expect("checked count");
                parts.push(pair_block_complex(lambda, k, p, q)?.0);
            }
        }
    }
    Ok(ComplexMatrix::direct_sum(&parts))
}

/// Wraps `x` with its residual against `a` and the positivity certificates.
pub(crate) fn certify(
    x: ComplexMatrix,
    real_ok: bool,
    assignment: BranchAssignment,
    a: &RealMatrix,
    tol: &Tolerance,
) -> Result<RootReport> {
    let x = RootMatrix::from_complex(x, real_ok);
    let p = assignment.p as u64;
    let residual = match &x {
        RootMatrix::Real(m) => (&mat_power(m, p)? - a).max_abs(),
        RootMatrix::Complex(m) => (&mat_power(m, p)? - &a.to_complex()).max_abs(),
    };
    let (mut ev, mut index, mut es) = (false, None, false);
    if let RootMatrix::Real(m) = &x {
        if is_eventually_positive(m, tol) {
            ev = true;
            let cap = default_power_cap(m.rows());
            index = Some(power_index(m, cap, tol)?);
            es = is_eventually_stochastic(m, tol, cap)?;
        }
    }
    Ok(RootReport {
        is_real: x.is_real(),
        x,
        assignment,
        residual,
        is_eventually_positive: ev,
        power_index: index,
        is_eventually_stochastic: es,
    })
}

/// `X_j = R [⊕ f_j(blocks)] R^-1` for a primary assignment.
pub fn assemble_primary_root(decomp: &RealJordanDecomposition, assignment: &BranchAssignment, tol: &Tolerance) -> Result<RootReport> {
    if decomp.is_singular() {
        return Err(Error::SingularSpectrum);
    }
    let assignment = checked(decomp, assignment)?;
    if !assignment.primary {
        return Err(Error::InvalidAssignment(format!(
            "{assignment} gives different branches to equal eigenvalues"
        )));
    }
    let m = block_functions(decomp, &assignment, false)?;
    let r = decomp.r().to_complex();
    let x = &(&r * &m) * &decomp.r_inv().to_complex();
    let real_ok = assignment.yields_real(decomp);
    certify(x, real_ok, assignment, decomp.matrix(), tol)
}

/// `X_j(U) = R U [⊕ f_j(blocks)] U^-1 R^-1` for a nonprimary assignment.
pub fn assemble_nonprimary_root(
    decomp: &RealJordanDecomposition,
    assignment: &BranchAssignment,
    u: &CommutantParameter,
    tol: &Tolerance,
) -> Result<RootReport> {
    if !decomp.is_derogatory() {
        return Err(Error::NotDerogatory);
    }
    if decomp.is_singular() {
        return Err(Error::SingularSpectrum);
    }
    let assignment = checked(decomp, assignment)?;
    if assignment.primary {
        return Err(Error::InvalidAssignment(format!(
            "{assignment} is primary; a nonprimary root needs different branches on equal eigenvalues"
        )));
    }
    let u = CommutantParameter::new(u.u().clone(), decomp, tol)?;
    let u_inv = mat_inv(u.u(), tol)?;
    let m = block_functions(decomp, &assignment, false)?;
    let left = (decomp.r() * u.u()).to_complex();
    let right = (&u_inv * decomp.r_inv()).to_complex();
    let x = &(&left * &m) * &right;
    let real_ok = assignment.yields_real(decomp);
    certify(x, real_ok, assignment, decomp.matrix(), tol)
}

/// Existence verdict for a possibly singular matrix, with a root when one
/// can be built.
#[derive(Debug, Clone, PartialEq)]
pub struct SingularRootReport {
    pub singular: bool,
    /// Sizes of the Jordan blocks of the eigenvalue zero (`J_0`).
    pub zero_block_sizes: Vec<usize>,
    /// A p-th root of `J_0` (hence of `A`) exists.
    pub exists: bool,
    /// `R (0 ⊕ X_1) R^-1` with principal branches on `J_1`, built when
    /// `J_0` is zero; the principal root when `A` is nonsingular.
    pub root: Option<RootReport>,
}

pub fn singular_root_report(decomp: &RealJordanDecomposition, p: usize, tol: &Tolerance) -> Result<SingularRootReport> {
    let assignment = BranchAssignment::principal(decomp, p)?;
    if !decomp.is_singular() {
        let root = assemble_primary_root(decomp, &assignment, tol)?;
        return Ok(SingularRootReport {
            singular: false,
            zero_block_sizes: Vec::new(),
            exists: true,
            root: Some(root),
        });
    }
    let zero_block_sizes: Vec<usize> = decomp
        .blocks()
        .iter()
        .filter(|b| matches!(b, RealBlockSpec::RealEigenBlock { lambda, .. } if *lambda == 0.0))
        .map(RealBlockSpec::k)
        .collect();
    let j0 = RealMatrix::direct_sum(&zero_block_sizes.iter().map(|&k| jordan_block(0.0, k)).collect::<Vec<_>>());
    let exists = pth_root_exists(&j0, p, tol)?;
    let root = if exists && zero_block_sizes.iter().all(|&k| k == 1) {
        let m = block_functions(decomp, &assignment, true)?;
        let r = decomp.r().to_complex();
        let x = &(&r * &m) * &decomp.r_inv().to_complex();
        let real_ok = assignment.yields_real(decomp);
        Some(certify(x, real_ok, assignment, decomp.matrix(), tol)?)
    } else {
        None
    };
    Ok(SingularRootReport {
        singular: true,
        zero_block_sizes,
        exists,
        root,
    })
}
