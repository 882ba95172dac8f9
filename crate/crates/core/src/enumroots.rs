//! Counting and enumeration of real and eventually positive p-th roots.

use crate::eigen::{check_p, pth_root_exists, SpectrumSummary};
use crate::matcore::{RealMatrix, Tolerance};
use crate::matfun::{
    assemble_nonprimary_root, assemble_primary_root, sample_commutant, singular_root_report, BranchAssignment,
    CommutantParameter, PairIndex, RootReport,
};
use crate::perron::{is_eventually_positive, DOMINANCE_MARGIN};
use crate::rjcf::{negative_pairing, RealBlockSpec, RealJordanDecomposition};
use crate::{Complex64, Error, Result};

/// Counts and the accepted roots of one enumeration.
#[derive(Debug, Clone, PartialEq)]
pub struct RootCatalog {
    /// `p^s`.
    pub primary_total: u128,
    pub real_primary_count: u128,
    pub ev_positive_primary_count: u128,
    /// Accepted assignments in canonical order.
    pub assignments: Vec<BranchAssignment>,
    pub roots: Vec<RootReport>,
    pub derogatory: bool,
    /// Nonprimary roots exist (some eigenvalue owns several blocks).
    pub nonprimary_available: bool,
}

fn pow(base: usize, exp: usize) -> u128 {
    (base as u128).saturating_pow(exp as u32)
}

/// Real primary p-th roots of a nonsingular real matrix: `2^{r1} p^c` for
/// even `p` without negative eigenvalues, `0` for even `p` with some,
/// `p^c` for odd `p`.
pub fn count_real_primary(summary: &SpectrumSummary, p: usize) -> Result<u128> {
    check_p(p)?;
    if summary.has_zero() {
        return Err(Error::SingularSpectrum);
    }
    Ok(if p % 2 == 1 {
        pow(p, summary.c())
    } else if summary.r2() == 0 {
        pow(2, summary.r1()) * pow(p, summary.c())
    } else {
        0
    })
}

/// Eventually positive primary p-th roots: `2^{r1-1} p^c` for even `p`
/// without negative eigenvalues, `0` for even `p` with some, `p^c` for
/// odd `p`.
///
/// The spectrum must have a simple, strictly dominant positive eigenvalue.
pub fn count_ev_positive_primary(summary: &SpectrumSummary, p: usize) -> Result<u128> {
    check_p(p)?;
    if summary.has_zero() {
        return Err(Error::SingularSpectrum);
    }
    perron_value(summary)?;
    Ok(if p % 2 == 1 {
        pow(p, summary.c())
    } else if summary.r2() == 0 {
        pow(2, summary.r1() - 1) * pow(p, summary.c())
    } else {
        0
    })
}

fn perron_value(summary: &SpectrumSummary) -> Result<Complex64> {
    let rho = summary.spectral_radius();
    let top = summary
        .eigenvalues
        .iter()
        .find(|e| e.is_real() && e.value.re > 0.0 && (e.value.re - rho).abs() <= DOMINANCE_MARGIN * rho)
        .ok_or_else(|| Error::NotEventuallyPositive("spectral radius is not an eigenvalue".into()))?;
    if top.multiplicity != 1 {
        return Err(Error::NotEventuallyPositive("spectral radius is not simple".into()));
    }
    let dominant = summary
        .eigenvalues
        .iter()
        .filter(|e| e.value != top.value)
        .all(|e| e.value.norm() <= rho * (1.0 - DOMINANCE_MARGIN));
    if !dominant {
        return Err(Error::NotEventuallyPositive("spectral radius is not strictly dominant".into()));
    }
    Ok(top.value)
}

/// Branch choice for one distinct eigenvalue (a conjugate pair counts once
/// and takes a [`PairIndex`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Choice {
    Single(usize),
    Pair(PairIndex),
}

/// Distinct eigenvalues in block order (`Im >= 0` representatives) and the
/// slot of every block.
fn slots(decomp: &RealJordanDecomposition) -> (Vec<Complex64>, Vec<usize>) {
    let mut keys: Vec<Complex64> = Vec::new();
    let mut of_block = Vec::with_capacity(decomp.blocks().len());
    for b in decomp.blocks() {
        let v = b.eigenvalue();
        let slot = match keys.iter().position(|&k| k == v) {
            Some(i) => i,
            None => {
                keys.push(v);
                keys.len() - 1
            }
        };
        of_block.push(slot);
    }
    (keys, of_block)
}

fn expand(decomp: &RealJordanDecomposition, p: usize, of_block: &[usize], choice: &[Choice]) -> Result<BranchAssignment> {
    let mut real_indices = Vec::new();
    let mut pair_indices = Vec::new();
    for (b, &slot) in decomp.blocks().iter().zip(of_block) {
        match (b, choice[slot]) {
            (RealBlockSpec::RealEigenBlock { .. }, Choice::Single(j)) => real_indices.push(j),
            (RealBlockSpec::ComplexPairBlock { .. }, Choice::Single(j)) => pair_indices.push(PairIndex::new(j, j)),
            (RealBlockSpec::ComplexPairBlock { .. }, Choice::Pair(q)) => pair_indices.push(q),
            (RealBlockSpec::RealEigenBlock { .. }, Choice::Pair(_)) => unreachable!("real slots take single indices"),
        }
    }
    BranchAssignment::new(decomp, p, real_indices, pair_indices)
}

/// Cartesian product of the per-slot options, last slot fastest.
fn product(options: &[Vec<Choice>]) -> Vec<Vec<Choice>> {
    if options.iter().any(Vec::is_empty) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; options.len()];
    loop {
        out.push(idx.iter().zip(options).map(|(&i, o)| o[i]).collect());
        let mut pos = options.len();
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < options[pos].len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// All `p^s` primary assignments in canonical order.
pub fn all_primary_assignments(decomp: &RealJordanDecomposition, p: usize) -> Result<Vec<BranchAssignment>> {
    check_p(p)?;
    let (keys, of_block) = slots(decomp);
    let options: Vec<Vec<Choice>> = keys
        .iter()
        .map(|k| {
            if k.im == 0.0 {
                (0..p).map(Choice::Single).collect()
            } else {
                (0..p)
                    .flat_map(|j1| (0..p).map(move |j2| Choice::Pair(PairIndex::new(j1, j2))))
                    .collect()
            }
        })
        .collect();
    product(&options)
        .iter()
        .map(|c| expand(decomp, p, &of_block, c))
        .collect()
}

/// Pair choices `(0,0), (1,p-1), …, (p-1,1)`.
fn conjugate_pairs(p: usize) -> Vec<Choice> {
    std::iter::once(PairIndex::new(0, 0))
        .chain((1..p).map(|j| PairIndex::new(j, p - j)))
        .map(Choice::Pair)
        .collect()
}

/// Assignments allowed for eventually positive roots: principal branch on
/// the Perron eigenvalue, real branches on the other real eigenvalues,
/// conjugate pairs `(0,0)` or `(j, p-j)`.
pub fn ev_positive_primary_assignments(decomp: &RealJordanDecomposition, p: usize) -> Result<Vec<BranchAssignment>> {
    check_p(p)?;
    let perron = perron_value(decomp.summary())?;
    let (keys, of_block) = slots(decomp);
    let options: Vec<Vec<Choice>> = keys
        .iter()
        .map(|&k| {
            if k == perron {
                vec![Choice::Single(0)]
            } else if k.im != 0.0 {
                conjugate_pairs(p)
            } else {
                crate::branches::real_branch_indices(k.re, p)
                    .into_iter()
                    .map(Choice::Single)
                    .collect()
            }
        })
        .collect();
    product(&options)
        .iter()
        .map(|c| expand(decomp, p, &of_block, c))
        .collect()
}

/// Builds and re-verifies every eventually positive primary root.
///
/// Each generated root must come out real and eventually positive, and the
/// number of roots must match [`count_ev_positive_primary`]; anything else
/// is a [`Error::Consistency`] failure.
pub fn enumerate_ev_positive_primary(decomp: &RealJordanDecomposition, p: usize, tol: &Tolerance) -> Result<RootCatalog> {
    if decomp.is_singular() {
        return Err(Error::SingularSpectrum);
    }
    let summary = decomp.summary();
    let expected = count_ev_positive_primary(summary, p)?;
    if !is_eventually_positive(decomp.matrix(), tol) {
        return Err(Error::NotEventuallyPositive(
            "A or A^T lacks the strong Perron-Frobenius property".into(),
        ));
    }
    let assignments = ev_positive_primary_assignments(decomp, p)?;
    let mut roots = Vec::with_capacity(assignments.len());
    for a in &assignments {
        let report = assemble_primary_root(decomp, a, tol)?;
        if !report.is_real || !report.is_eventually_positive {
            return Err(Error::Consistency(format!(
                "assignment {a} should give an eventually positive real root (real: {}, eventually positive: {})",
                report.is_real, report.is_eventually_positive
            )));
        }
        roots.push(report);
    }
    if roots.len() as u128 != expected {
        return Err(Error::Consistency(format!(
            "enumerated {} eventually positive roots, the count formula gives {expected}",
            roots.len()
        )));
    }
    let derogatory = decomp.is_derogatory();
    Ok(RootCatalog {
        primary_total: pow(p, summary.s()),
        real_primary_count: count_real_primary(summary, p)?,
        ev_positive_primary_count: expected,
        assignments,
        roots,
        derogatory,
        nonprimary_available: derogatory,
    })
}

/// Samples one nonprimary root per seed for an assignment that keeps the
/// Perron branch principal and uses real branches elsewhere.
pub fn enumerate_nonprimary_family(
    decomp: &RealJordanDecomposition,
    assignment: &BranchAssignment,
    seeds: &[u64],
    tol: &Tolerance,
) -> Result<Vec<RootReport>> {
    if !decomp.is_derogatory() {
        return Err(Error::NotDerogatory);
    }
    let perron = perron_value(decomp.summary())?;
    let assignment = BranchAssignment::new(
        decomp,
        assignment.p,
        assignment.real_indices.clone(),
        assignment.pair_indices.clone(),
    )?;
    let perron_block = decomp
        .blocks()
        .iter()
        .position(|b| b.eigenvalue() == perron && !b.is_pair())
        .expect("perron eigenvalue has a real block");
    if assignment.real_indices[perron_block] != 0 {
        return Err(Error::InvalidAssignment(format!(
            "{assignment}: the Perron block must take the principal branch"
        )));
    }
    if !assignment.yields_real(decomp) {
        return Err(Error::InvalidAssignment(format!(
            "{assignment} does not satisfy the branch conditions for a real root"
        )));
    }
    seeds
        .iter()
        .map(|&seed| {
            let u = sample_commutant(decomp, seed, tol)?;
            let report = assemble_nonprimary_root(decomp, &assignment, &u, tol)?;
            if !report.is_eventually_positive {
                return Err(Error::Consistency(format!(
                    "nonprimary root for {assignment}, seed {seed} is not eventually positive"
                )));
            }
            Ok(report)
        })
        .collect()
}

/// A real p-th root when one exists, `None` otherwise.
///
/// Every real block takes its real branch (`0` for positive, `(p-1)/2` for
/// negative eigenvalues with odd `p`) and every conjugate pair `(0,0)`. For
/// even `p` the negative blocks are paired into `C_k(λ)` blocks with
/// branches `(0, p-1)`, which makes the root nonprimary (`U = I`). Singular
/// matrices go through [`singular_root_report`].
pub fn principal_real_root(decomp: &RealJordanDecomposition, p: usize, tol: &Tolerance) -> Result<Option<RootReport>> {
    check_p(p)?;
    if decomp.is_singular() {
        let report = singular_root_report(decomp, p, tol)?;
        return Ok(report.root.filter(|r| r.is_real));
    }
    let paired = match negative_pairing(decomp, p) {
        Ok(d) => d,
        Err(Error::UnpairedNegativeBlock { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    if !pth_root_exists(paired.matrix(), p, tol)? {
        return Ok(None);
    }
    let mut real_indices = Vec::new();
    let mut pair_indices = Vec::new();
    for b in paired.blocks() {
        match *b {
            RealBlockSpec::RealEigenBlock { lambda, .. } => {
                real_indices.push(if lambda > 0.0 { 0 } else { (p - 1) / 2 });
            }
            RealBlockSpec::ComplexPairBlock { lambda, .. } if lambda.im == 0.0 => {
                pair_indices.push(PairIndex::new(0, p - 1));
            }
            RealBlockSpec::ComplexPairBlock { .. } => pair_indices.push(PairIndex::new(0, 0)),
        }
    }
    let assignment = BranchAssignment::new(&paired, p, real_indices, pair_indices)?;
    let report = if assignment.primary {
        assemble_primary_root(&paired, &assignment, tol)?
    } else {
        let u = CommutantParameter::new(RealMatrix::identity(paired.n()), &paired, tol)?;
        assemble_nonprimary_root(&paired, &assignment, &u, tol)?
    };
    Ok(Some(report))
}
