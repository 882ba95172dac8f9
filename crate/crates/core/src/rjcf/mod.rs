//! Real Jordan canonical form `A = R J_R R^-1`.
//!
//! `J_R` lists real Jordan blocks `J_k(λ)` first, then 2k×2k blocks
//! `C_k(λ)` for conjugate pairs (and for paired negative eigenvalues after
//! [`negative_pairing`]).

mod decompose;
mod factorization;

use num_complex::Complex64;

use crate::eigen::{DistinctEigenvalue, JordanStructure, SpectrumSummary};
use crate::matcore::{mat_inv, ComplexMatrix, Matrix, RealMatrix, Scalar, Tolerance};
use crate::{Error, Result};

pub use decompose::real_jordan_decompose;
pub use factorization::{format_factorization, parse_factorization, FactorizationFile};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RealBlockSpec {
    /// `J_k(λ)` for real `λ`.
    RealEigenBlock { lambda: f64, k: usize },
    /// `C_k(λ)`, 2k rows. `Im λ > 0`, or `λ` negative real for a pair of
    /// equal negative blocks.
    ComplexPairBlock { lambda: Complex64, k: usize },
}

impl RealBlockSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::RealEigenBlock { lambda, k } => {
                if k == 0 || !lambda.is_finite() {
                    return Err(Error::InvalidArgument(format!("bad real block ({lambda}, {k})")));
                }
            }
            Self::ComplexPairBlock { lambda, k } => {
                let ok = lambda.im > 0.0 || (lambda.im == 0.0 && lambda.re < 0.0);
                if k == 0 || !ok || !lambda.re.is_finite() || !lambda.im.is_finite() {
                    return Err(Error::InvalidArgument(format!(
                        "complex-pair block needs Im > 0 or a negative real value, got ({lambda}, {k})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        match *self {
            Self::RealEigenBlock { k, .. } => k,
            Self::ComplexPairBlock { k, .. } => 2 * k,
        }
    }

    pub fn k(&self) -> usize {
        match *self {
            Self::RealEigenBlock { k, .. } | Self::ComplexPairBlock { k, .. } => k,
        }
    }

    pub fn eigenvalue(&self) -> Complex64 {
        match *self {
            Self::RealEigenBlock { lambda, .. } => Complex64::new(lambda, 0.0),
            Self::ComplexPairBlock { lambda, .. } => lambda,
        }
    }

    pub fn is_pair(&self) -> bool {
        matches!(self, Self::ComplexPairBlock { .. })
    }

    /// A `C_k(λ)` block built from two equal negative Jordan blocks.
    pub fn is_negative_pair(&self) -> bool {
        matches!(self, Self::ComplexPairBlock { lambda, .. } if lambda.im == 0.0)
    }

    pub fn matrix(&self) -> RealMatrix {
        match *self {
            Self::RealEigenBlock { lambda, k } => jordan_block(lambda, k),
            Self::ComplexPairBlock { lambda, k } => complex_pair_block(lambda, k).expect("validated k >= 1"),
        }
    }
}

/// Upper-bidiagonal `J_k(λ)`.
pub fn jordan_block<T: Scalar>(lambda: T, k: usize) -> Matrix<T> {
    let mut j = Matrix::zeros(k, k);
    for i in 0..k {
        j[(i, i)] = lambda;
        if i + 1 < k {
            j[(i, i + 1)] = T::one();
        }
    }
    j
}

/// `C(λ) = [[Re λ, Im λ], [-Im λ, Re λ]]`.
pub fn real_pair_2x2(lambda: Complex64) -> RealMatrix {
    RealMatrix::new(2, 2, vec![lambda.re, lambda.im, -lambda.im, lambda.re]).expect("2x2")
}

/// `C_k(λ)`: `C(λ)` on the block diagonal, `I_2` on the block superdiagonal.
pub fn complex_pair_block(lambda: Complex64, k: usize) -> Result<RealMatrix> {
    if k < 1 {
        return Err(Error::InvalidArgument("block size must be >= 1".into()));
    }
    let c = real_pair_2x2(lambda);
    let mut m = RealMatrix::zeros(2 * k, 2 * k);
    for b in 0..k {
        m.set_block(2 * b, 2 * b, &c);
        if b + 1 < k {
            m[(2 * b, 2 * b + 2)] = 1.0;
            m[(2 * b + 1, 2 * b + 3)] = 1.0;
        }
    }
    Ok(m)
}

/// `S_k = ⊕ S` with `S = [[-i, -i], [1, -1]]`, so that
/// `S_k^-1 C_k(λ) S_k = D_k(λ)`.
pub fn pairing_similarity(k: usize) -> ComplexMatrix {
    let s = ComplexMatrix::new(
        2,
        2,
        vec![
            Complex64::new(0.0, -1.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(1.0, 0.0),
            Complex64::new(-1.0, 0.0),
        ],
    )
    .expect("2x2");
    ComplexMatrix::direct_sum(&vec![s; k])
}

/// `S_k^-1`, using `S^-1 = ½[[i, 1], [i, -1]]`.
pub fn pairing_similarity_inverse(k: usize) -> ComplexMatrix {
    let s = ComplexMatrix::new(
        2,
        2,
        vec![
            Complex64::new(0.0, 0.5),
            Complex64::new(0.5, 0.0),
            Complex64::new(0.0, 0.5),
            Complex64::new(-0.5, 0.0),
        ],
    )
    .expect("2x2");
    ComplexMatrix::direct_sum(&vec![s; k])
}

/// Permutation with columns `e_1, e_3, …, e_{2k-1}, e_2, e_4, …, e_{2k}`.
pub fn interleave_permutation(k: usize) -> RealMatrix {
    let mut p = RealMatrix::zeros(2 * k, 2 * k);
    for col in 0..2 * k {
        let row = if col < k { 2 * col } else { 2 * (col - k) + 1 };
        p[(row, col)] = 1.0;
    }
    p
}

/// `A = R J_R R^-1` with the block list describing `J_R`.
#[derive(Debug, Clone)]
pub struct RealJordanDecomposition {
    a: RealMatrix,
    r: RealMatrix,
    r_inv: RealMatrix,
    blocks: Vec<RealBlockSpec>,
    summary: SpectrumSummary,
}

impl RealJordanDecomposition {
    /// Builds a decomposition from trusted parts, checking shapes and block
    /// ordering. `r_inv` is computed.
    pub fn new(r: RealMatrix, blocks: Vec<RealBlockSpec>, tol: &Tolerance) -> Result<Self> {
        let n = r.ensure_square()?;
        for b in &blocks {
            b.validate()?;
        }
        let total: usize = blocks.iter().map(RealBlockSpec::dim).sum();
        if total != n {
            return Err(Error::DimensionMismatch(format!(
                "blocks cover {total} rows, R has order {n}"
            )));
        }
        if let Some(first_pair) = blocks.iter().position(RealBlockSpec::is_pair) {
            if blocks[first_pair..].iter().any(|b| !b.is_pair()) {
                return Err(Error::InvalidArgument(
                    "real-eigenvalue blocks must precede complex-pair blocks".into(),
                ));
            }
        }
        let r_inv = mat_inv(&r, tol)?;
        let summary = summary_from_blocks(&blocks)?;
        let mut d = Self {
            a: RealMatrix::zeros(n, n),
            r,
            r_inv,
            blocks,
            summary,
        };
        d.a = d.reconstruct();
        Ok(d)
    }

    /// [`new`](Self::new) plus a check that `R J_R R^-1` reproduces `a` to
    /// `bound_rel * max(1, ||a||_inf)`.
    pub fn validated(a: &RealMatrix, r: RealMatrix, blocks: Vec<RealBlockSpec>, bound_rel: f64, tol: &Tolerance) -> Result<Self> {
        if a.rows() != r.rows() || a.cols() != r.cols() {
            return Err(Error::DimensionMismatch(format!(
                "A is {}x{}, R is {}x{}",
                a.rows(),
                a.cols(),
                r.rows(),
                r.cols()
            )));
        }
        let mut d = Self::new(r, blocks, tol)?;
        let residual = d.residual(a);
        let bound = bound_rel * a.norm_inf().max(1.0);
        if residual > bound {
            return Err(Error::Reconstruction { residual, bound });
        }
        d.a = a.clone();
        Ok(d)
    }

    /// The decomposed matrix (`R J_R R^-1` when built without one).
    pub fn matrix(&self) -> &RealMatrix {
        &self.a
    }

    pub fn n(&self) -> usize {
        self.r.rows()
    }

    pub fn r(&self) -> &RealMatrix {
        &self.r
    }

    pub fn r_inv(&self) -> &RealMatrix {
        &self.r_inv
    }

    pub fn blocks(&self) -> &[RealBlockSpec] {
        &self.blocks
    }

    pub fn summary(&self) -> &SpectrumSummary {
        &self.summary
    }

    /// Row offset of each block inside `J_R`.
    pub fn offsets(&self) -> Vec<usize> {
        self.blocks
            .iter()
            .scan(0, |acc, b| {
                let o = *acc;
                *acc += b.dim();
                Some(o)
            })
            .collect()
    }

    pub fn j_real(&self) -> RealMatrix {
        RealMatrix::direct_sum(&self.blocks.iter().map(RealBlockSpec::matrix).collect::<Vec<_>>())
    }

    pub fn reconstruct(&self) -> RealMatrix {
        &(&self.r * &self.j_real()) * &self.r_inv
    }

    /// `||a - R J_R R^-1||_inf`.
    pub fn residual(&self, a: &RealMatrix) -> f64 {
        (a - &self.reconstruct()).norm_inf()
    }

    /// Complex Jordan structure implied by the block list.
    pub fn structure(&self) -> JordanStructure {
        let mut out: Vec<(Complex64, Vec<usize>)> = Vec::new();
        let mut push = |v: Complex64, k: usize| match out.iter_mut().find(|(w, _)| *w == v) {
            Some((_, s)) => s.push(k),
            None => out.push((v, vec![k])),
        };
        for b in &self.blocks {
            match *b {
                RealBlockSpec::RealEigenBlock { lambda, k } => push(Complex64::new(lambda, 0.0), k),
                RealBlockSpec::ComplexPairBlock { lambda, k } => {
                    push(lambda, k);
                    push(lambda.conj(), k);
                }
            }
        }
        for (_, s) in &mut out {
            s.sort_unstable_by(|a, b| b.cmp(a));
        }
        JordanStructure { blocks: out }
    }

    pub fn is_derogatory(&self) -> bool {
        self.structure().is_derogatory()
    }

    pub fn is_singular(&self) -> bool {
        self.blocks.iter().any(|b| b.eigenvalue() == Complex64::new(0.0, 0.0))
    }

    /// Replaces the column order by `perm` (`new[i] = old[perm[i]]`).
    fn permuted(&self, perm: &[usize], blocks: Vec<RealBlockSpec>) -> Self {
        let n = self.n();
        let mut r = RealMatrix::zeros(n, n);
        let mut r_inv = RealMatrix::zeros(n, n);
        for (new, &old) in perm.iter().enumerate() {
            for i in 0..n {
                r[(i, new)] = self.r[(i, old)];
                r_inv[(new, i)] = self.r_inv[(old, i)];
            }
        }
        Self {
            a: self.a.clone(),
            r,
            r_inv,
            blocks,
            summary: self.summary.clone(),
        }
    }
}

fn summary_from_blocks(blocks: &[RealBlockSpec]) -> Result<SpectrumSummary> {
    let mut ev: Vec<DistinctEigenvalue> = Vec::new();
    let mut add = |value: Complex64, k: usize| match ev.iter_mut().find(|e| e.value == value) {
        Some(e) => {
            e.multiplicity += k;
            e.index = e.index.max(Some(k));
        }
        None => ev.push(DistinctEigenvalue {
            value,
            multiplicity: k,
            index: Some(k),
        }),
    };
    let mut count = 0;
    for b in blocks {
        match *b {
            RealBlockSpec::RealEigenBlock { lambda, k } => {
                add(Complex64::new(lambda, 0.0), k);
                count += 1;
            }
            RealBlockSpec::ComplexPairBlock { lambda, k } => {
                add(lambda, k);
                add(lambda.conj(), k);
                count += 2;
            }
        }
    }
    let mut s = SpectrumSummary::new(ev)?;
    s.block_count = Some(count);
    Ok(s)
}

/// Rewrites each pair of equal negative blocks `J_k(λ) ⊕ J_k(λ)` as
/// `C_k(λ)`, interleaving the corresponding columns of `R`. Odd `p` leaves
/// the decomposition unchanged.
pub fn negative_pairing(decomp: &RealJordanDecomposition, p: usize) -> Result<RealJordanDecomposition> {
    crate::eigen::check_p(p)?;
    if p % 2 == 1 {
        return Ok(decomp.clone());
    }
    let offsets = decomp.offsets();
    let mut keep: Vec<usize> = Vec::new();
    let mut groups: Vec<((f64, usize), Vec<usize>)> = Vec::new();
    for (i, b) in decomp.blocks.iter().enumerate() {
        match *b {
            RealBlockSpec::RealEigenBlock { lambda, k } if lambda < 0.0 => {
                match groups.iter_mut().find(|(key, _)| *key == (lambda, k)) {
                    Some((_, members)) => members.push(i),
                    None => groups.push(((lambda, k), vec![i])),
                }
            }
            _ => keep.push(i),
        }
    }
    if groups.is_empty() {
        return Ok(decomp.clone());
    }
    if let Some(((lambda, size), _)) = groups.iter().find(|(_, m)| m.len() % 2 == 1) {
        return Err(Error::UnpairedNegativeBlock {
            lambda: *lambda,
            size: *size,
        });
    }

    let mut perm = Vec::with_capacity(decomp.n());
    let mut blocks = Vec::with_capacity(decomp.blocks.len());
    for &i in &keep {
        let b = decomp.blocks[i];
        perm.extend(offsets[i]..offsets[i] + b.dim());
        blocks.push(b);
    }
    for ((lambda, k), members) in &groups {
        for pair in members.chunks(2) {
            let (first, second) = (offsets[pair[0]], offsets[pair[1]]);
            for i in 0..*k {
                perm.push(first + i);
                perm.push(second + i);
            }
            blocks.push(RealBlockSpec::ComplexPairBlock {
                lambda: Complex64::new(*lambda, 0.0),
                k: *k,
            });
        }
    }
    Ok(decomp.permuted(&perm, blocks))
}
