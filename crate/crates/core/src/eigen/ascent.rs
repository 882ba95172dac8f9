use crate::matcore::{rank_above, singular_values, RealMatrix, Tolerance};
use crate::Result;

use super::{analyze_spectrum, JordanStructure};

/// `d_i = dim null(A^i) - dim null(A^{i-1})` for `i = 1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AscentSequence {
    pub d: Vec<usize>,
}

impl AscentSequence {
    /// For every `ν ≥ 0`, at most one `d_i` lies strictly between `pν` and
    /// `p(ν+1)`.
    pub fn admits_root(&self, p: usize) -> bool {
        let max = self.d.iter().copied().max().unwrap_or(0);
        (0..=max / p).all(|nu| {
            self.d
                .iter()
                .filter(|&&di| p * nu < di && di < p * (nu + 1))
                .count()
                <= 1
        })
    }
}

pub fn ascent_sequence(a: &RealMatrix, tol: &Tolerance) -> Result<AscentSequence> {
    let n = a.ensure_square()?;
    let smax = singular_values(a).first().copied().unwrap_or(0.0);
    let mut d = vec![0; n];
    let mut prev_null = 0;
    let mut power = RealMatrix::identity(n);
    for (i, di) in d.iter_mut().enumerate() {
        power = &power * a;
        let threshold = tol.rank_eps * smax.powi(i as i32 + 1);
        let null = n - rank_above(&power, threshold);
        *di = null.saturating_sub(prev_null);
        if *di == 0 {
            break;
        }
        prev_null = null;
    }
    Ok(AscentSequence { d })
}

pub fn pth_root_exists(a: &RealMatrix, p: usize, tol: &Tolerance) -> Result<bool> {
    check_p(p)?;
    Ok(ascent_sequence(a, tol)?.admits_root(p))
}

/// Ascent condition plus, for even `p`, an even number of Jordan blocks of
/// every size for each negative eigenvalue.
pub fn real_pth_root_exists(a: &RealMatrix, p: usize, tol: &Tolerance) -> Result<bool> {
    if !pth_root_exists(a, p, tol)? {
        return Ok(false);
    }
    if p % 2 == 1 {
        return Ok(true);
    }
    let (_, structure) = analyze_spectrum(a, tol)?;
    Ok(negative_blocks_pair_up(&structure))
}

pub(crate) fn negative_blocks_pair_up(structure: &JordanStructure) -> bool {
    structure
        .blocks
        .iter()
        .filter(|(v, _)| v.im == 0.0 && v.re < 0.0)
        .all(|(_, sizes)| {
            sizes
                .iter()
                .all(|k| sizes.iter().filter(|&s| s == k).count() % 2 == 0)
        })
}

pub(crate) fn check_p(p: usize) -> Result<()> {
    if p < 2 {
        return Err(crate::Error::InvalidArgument(format!(
            "root order p must be >= 2, got {p}"
        )));
    }
    Ok(())
}
