use num_complex::Complex64;

use super::SpectrumSummary;
use crate::matcore::{rank_above, singular_values, Matrix, RealMatrix, Scalar, Tolerance};
use crate::{Error, Result};

/// Jordan block sizes per distinct eigenvalue, largest first.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanStructure {
    pub blocks: Vec<(Complex64, Vec<usize>)>,
}

impl JordanStructure {
    pub fn sizes(&self, value: Complex64) -> Option<&[usize]> {
        self.blocks
            .iter()
            .find(|(v, _)| *v == value)
            .map(|(_, s)| s.as_slice())
    }

    pub fn block_count(&self) -> usize {
        self.blocks.iter().map(|(_, s)| s.len()).sum()
    }

    pub fn dimension(&self) -> usize {
        self.blocks.iter().map(|(_, s)| s.iter().sum::<usize>()).sum()
    }

    /// Some eigenvalue owns more than one block.
    pub fn is_derogatory(&self) -> bool {
        self.blocks.iter().any(|(_, s)| s.len() > 1)
    }
}

impl SpectrumSummary {
    /// Fills in the index of each eigenvalue and the total block count.
    pub fn attach_structure(&mut self, structure: &JordanStructure) {
        for e in &mut self.eigenvalues {
            e.index = structure.sizes(e.value).and_then(|s| s.first().copied());
        }
        self.block_count = Some(structure.block_count());
    }
}

/// Recovers block sizes from the rank drops `w_k = rank(N^{k-1}) - rank(N^k)`
/// of `N = A - λI`; `w_k - w_{k+1}` blocks have size exactly `k`.
pub fn jordan_structure(a: &RealMatrix, summary: &SpectrumSummary, tol: &Tolerance) -> Result<JordanStructure> {
    let n = a.ensure_square()?;
    if summary.dimension() != n {
        return Err(Error::DimensionMismatch(format!(
            "spectrum accounts for {} eigenvalues, matrix has order {n}",
            summary.dimension()
        )));
    }
    let scale = singular_values(a).first().copied().unwrap_or(0.0);
    let mut blocks = Vec::with_capacity(summary.s());
    for e in &summary.eigenvalues {
        let sizes = if e.value.im < 0.0 {
            // mirror the partner computed just before it
            let (_, s): &(Complex64, Vec<usize>) = blocks
                .iter()
                .find(|(v, _): &&(Complex64, Vec<usize>)| *v == e.value.conj())
                .ok_or(Error::UnpairedConjugate { value: e.value })?;
            s.clone()
        } else if e.value.im == 0.0 {
            let shifted = shift(a, e.value.re);
            sizes_from_ranks(&shifted, e.value, e.multiplicity, scale, tol)?
        } else {
            let shifted = shift(&a.to_complex(), e.value);
            sizes_from_ranks(&shifted, e.value, e.multiplicity, scale, tol)?
        };
        blocks.push((e.value, sizes));
    }
    Ok(JordanStructure { blocks })
}

fn shift<T: Scalar>(a: &Matrix<T>, lambda: T) -> Matrix<T> {
    let mut m = a.clone();
    for i in 0..a.rows() {
        m[(i, i)] -= lambda;
    }
    m
}

/// Ranks of `N^0, N^1, …` until the nullity reaches `mult`.
///
/// Singular values of `N^k` at or below
/// `rank_eps * max(σ_max(N), scale) * σ_max(N)^(k-1)` count as zero. `scale`
/// is the size of the unshifted matrix, so a shift that leaves only rounding
/// noise has rank zero.
pub(crate) fn rank_sequence<T: Scalar>(
    nmat: &Matrix<T>,
    mult: usize,
    eigenvalue: Complex64,
    scale: f64,
    tol: &Tolerance,
) -> Result<Vec<usize>> {
    let n = nmat.rows();
    let smax = singular_values(nmat).first().copied().unwrap_or(0.0);
    let mut ranks = vec![n];
    let mut power = Matrix::<T>::identity(n);
    for k in 1..=mult {
        power = &power * nmat;
        let threshold = tol.rank_eps * smax.max(scale) * smax.powi(k as i32 - 1);
        let r = rank_above(&power, threshold);
        ranks.push(r);
        if r <= n - mult {
            break;
        }
        if r == ranks[k - 1] {
            break;
        }
    }
    let last = *ranks.last().unwrap();
    if last != n - mult {
        return Err(Error::InconsistentRanks {
            eigenvalue,
            detail: format!(
                "rank sequence {ranks:?} never reaches n - multiplicity = {}",
                n - mult
            ),
        });
    }
    Ok(ranks)
}

fn sizes_from_ranks<T: Scalar>(
    nmat: &Matrix<T>,
    eigenvalue: Complex64,
    mult: usize,
    scale: f64,
    tol: &Tolerance,
) -> Result<Vec<usize>> {
    let ranks = rank_sequence(nmat, mult, eigenvalue, scale, tol)?;
    let w: Vec<usize> = ranks.windows(2).map(|p| p[0] - p[1]).collect();
    if w.windows(2).any(|p| p[1] > p[0]) {
        return Err(Error::InconsistentRanks {
            eigenvalue,
            detail: format!("rank drops {w:?} are not nonincreasing"),
        });
    }
    let mut sizes = Vec::new();
    for k in (1..=w.len()).rev() {
        let next = w.get(k).copied().unwrap_or(0);
        sizes.extend(std::iter::repeat_n(k, w[k - 1] - next));
    }
    Ok(sizes)
}
