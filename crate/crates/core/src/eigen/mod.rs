//! Spectra, Jordan structure and the root existence tests.

mod ascent;
mod cluster;
mod schur;
mod structure;

pub use ascent::{ascent_sequence, pth_root_exists, real_pth_root_exists, AscentSequence};
pub(crate) use ascent::check_p;
pub use cluster::{cluster_eigenvalues, DistinctEigenvalue, SpectrumSummary};
pub use schur::{complex_schur, eigenvalues, ComplexSchur};
pub use structure::{jordan_structure, JordanStructure};

use crate::matcore::{RealMatrix, Tolerance};
use crate::Result;

/// Schur eigenvalues, clustering and Jordan structure in one pass. The
/// returned summary already carries indices and the block count.
pub fn analyze_spectrum(a: &RealMatrix, tol: &Tolerance) -> Result<(SpectrumSummary, JordanStructure)> {
    let raw = eigenvalues(a, tol)?;
    let mut summary = cluster_eigenvalues(&raw, a.norm_inf(), tol)?;
    let structure = jordan_structure(a, &summary, tol)?;
    summary.attach_structure(&structure);
    Ok((summary, structure))
}
