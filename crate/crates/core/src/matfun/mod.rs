//! Branch evaluation on Jordan and complex-pair blocks and assembly of
//! primary and nonprimary p-th roots.

mod assemble;
mod blocks;
mod commutant;

use std::fmt;

use num_complex::Complex64;

use crate::branches::{conjugate_branch_condition, negative_axis_branch_condition, real_branch_indices};
use crate::eigen::check_p;
use crate::matcore::{ComplexMatrix, RealMatrix};
use crate::perron::PowerIndexResult;
use crate::rjcf::{RealBlockSpec, RealJordanDecomposition};
use crate::{Error, Result};

pub use assemble::{assemble_nonprimary_root, assemble_primary_root, singular_root_report, SingularRootReport};
pub use blocks::{branch_on_jordan_block, branch_pair_on_complex_block};
pub use commutant::{commutant_basis, sample_commutant, CommutantParameter};

/// Branch indices `(j_{k1}, j_{k2})` of a complex-pair block: `j_{k1}` for
/// `λ`, `j_{k2}` for `λ̄` (or for the second block of a negative pair).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairIndex {
    pub j1: usize,
    pub j2: usize,
}

impl PairIndex {
    pub fn new(j1: usize, j2: usize) -> Self {
        Self { j1, j2 }
    }
}

impl fmt::Display for PairIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.j1, self.j2)
    }
}

/// One branch index per real block and one [`PairIndex`] per complex-pair
/// block, in decomposition order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BranchAssignment {
    pub p: usize,
    pub real_indices: Vec<usize>,
    pub pair_indices: Vec<PairIndex>,
    /// Blocks sharing an eigenvalue carry the same index.
    pub primary: bool,
}

impl BranchAssignment {
    /// Checks counts and ranges against `decomp` and works out whether the
    /// assignment is primary.
    pub fn new(
        decomp: &RealJordanDecomposition,
        p: usize,
        real_indices: Vec<usize>,
        pair_indices: Vec<PairIndex>,
    ) -> Result<Self> {
        check_p(p)?;
        let (real_blocks, pair_blocks) = block_counts(decomp);
        if real_indices.len() != real_blocks || pair_indices.len() != pair_blocks {
            return Err(Error::InvalidAssignment(format!(
                "decomposition has {real_blocks} real and {pair_blocks} pair blocks, assignment has {} and {}",
                real_indices.len(),
                pair_indices.len()
            )));
        }
        let out_of_range = real_indices
            .iter()
            .chain(pair_indices.iter().flat_map(|q| [&q.j1, &q.j2]))
            .find(|&&j| j >= p);
        if let Some(j) = out_of_range {
            return Err(Error::InvalidAssignment(format!("branch index {j} out of range for p = {p}")));
        }
        let mut a = Self {
            p,
            real_indices,
            pair_indices,
            primary: true,
        };
        let per_block = a.per_jordan_block(decomp);
        a.primary = per_block
            .iter()
            .enumerate()
            .all(|(i, (v, j))| per_block[..i].iter().all(|(w, k)| w != v || k == j));
        Ok(a)
    }

    /// Principal branch `j = 0` on every block.
    pub fn principal(decomp: &RealJordanDecomposition, p: usize) -> Result<Self> {
        let (r, c) = block_counts(decomp);
        Self::new(decomp, p, vec![0; r], vec![PairIndex::new(0, 0); c])
    }

    /// `(eigenvalue, j)` for every Jordan block of the complex Jordan form.
    fn per_jordan_block(&self, decomp: &RealJordanDecomposition) -> Vec<(Complex64, usize)> {
        let mut reals = self.real_indices.iter();
        let mut pairs = self.pair_indices.iter();
        let mut out = Vec::new();
        for b in decomp.blocks() {
            match *b {
                RealBlockSpec::RealEigenBlock { lambda, .. } => {
                    out.push((Complex64::new(lambda, 0.0), *reals.next().unwrap()));
                }
                RealBlockSpec::ComplexPairBlock { lambda, .. } => {
                    let q = pairs.next().unwrap();
                    out.push((lambda, q.j1));
                    out.push((lambda.conj(), q.j2));
                }
            }
        }
        out
    }

    /// Every block uses branches that make its contribution real: real
    /// blocks take a real branch value, pairs satisfy the conjugacy
    /// condition for their position. Zero blocks are ignored.
    pub fn yields_real(&self, decomp: &RealJordanDecomposition) -> bool {
        let mut reals = self.real_indices.iter();
        let mut pairs = self.pair_indices.iter();
        decomp.blocks().iter().all(|b| match *b {
            RealBlockSpec::RealEigenBlock { lambda, .. } => {
                let j = *reals.next().unwrap();
                lambda == 0.0 || real_branch_indices(lambda, self.p).contains(&j)
            }
            RealBlockSpec::ComplexPairBlock { lambda, .. } => {
                let q = pairs.next().unwrap();
                pair_is_real(lambda, *q, self.p)
            }
        })
    }
}

pub(crate) fn pair_is_real(lambda: Complex64, q: PairIndex, p: usize) -> bool {
    if lambda.im != 0.0 {
        conjugate_branch_condition(q.j1, q.j2, p)
    } else if lambda.re < 0.0 {
        negative_axis_branch_condition(q.j1, q.j2, p)
    } else {
        q.j1 == q.j2 && real_branch_indices(lambda.re, p).contains(&q.j1)
    }
}

fn block_counts(decomp: &RealJordanDecomposition) -> (usize, usize) {
    let pairs = decomp.blocks().iter().filter(|b| b.is_pair()).count();
    (decomp.blocks().len() - pairs, pairs)
}

impl fmt::Display for BranchAssignment {
    /// `(j_1, …, (j_{k1},j_{k2}), …)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .real_indices
            .iter()
            .map(ToString::to_string)
            .chain(self.pair_indices.iter().map(ToString::to_string))
            .collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A computed root: real when the branch conditions hold and the imaginary
/// parts are negligible, complex otherwise.
#[derive(Debug, Clone, PartialEq)]
pub enum RootMatrix {
    Real(RealMatrix),
    Complex(ComplexMatrix),
}

impl RootMatrix {
    pub fn as_real(&self) -> Option<&RealMatrix> {
        match self {
            Self::Real(m) => Some(m),
            Self::Complex(_) => None,
        }
    }

    pub fn to_complex(&self) -> ComplexMatrix {
        match self {
            Self::Real(m) => m.to_complex(),
            Self::Complex(m) => m.clone(),
        }
    }

    pub fn is_real(&self) -> bool {
        matches!(self, Self::Real(_))
    }

    pub fn rows(&self) -> usize {
        match self {
            Self::Real(m) => m.rows(),
            Self::Complex(m) => m.rows(),
        }
    }

    pub fn max_abs(&self) -> f64 {
        match self {
            Self::Real(m) => m.max_abs(),
            Self::Complex(m) => m.max_abs(),
        }
    }

    /// Keeps the real part when `real_ok` and the imaginary parts are at
    /// most `1e-12 * max(1, ||X||_inf)`.
    pub(crate) fn from_complex(x: ComplexMatrix, real_ok: bool) -> Self {
        let limit = IMAG_TRUNCATION * x.norm_inf().max(1.0);
        if real_ok && x.max_imag() <= limit {
            Self::Real(x.real_part())
        } else {
            Self::Complex(x)
        }
    }
}

/// Relative bound on imaginary parts discarded from results flagged real.
pub const IMAG_TRUNCATION: f64 = 1e-12;

/// A candidate root with its certificates.
#[derive(Debug, Clone, PartialEq)]
pub struct RootReport {
    pub x: RootMatrix,
    pub assignment: BranchAssignment,
    /// Largest entry of `|X^p - A|`.
    pub residual: f64,
    pub is_real: bool,
    pub is_eventually_positive: bool,
    /// Power index of `X`, computed when `X` is eventually positive.
    pub power_index: Option<PowerIndexResult>,
    pub is_eventually_stochastic: bool,
}

impl RootReport {
    /// Power index of `X` when found.
    pub fn witness_exponent(&self) -> Option<u64> {
        self.power_index.and_then(|r| r.index())
    }
}
