//! Real and eventually positive p-th roots of primitive matrices.
//!
//! The pipeline runs bottom-up through these modules:
//!
//! - [`matcore`]: dense real/complex matrices, inversion, powers and the
//!   matrix text format.
//! - [`branches`]: scalar branches of the p-th root and their derivatives.
//! - [`eigen`]: complex Schur form, eigenvalue clustering, Jordan structure
//!   recovery and the ascent-sequence existence tests.
//! - [`rjcf`]: the real Jordan canonical form `A = R J_R R^-1`.
//! - [`matfun`]: branch evaluation on Jordan and complex-pair blocks and
//!   assembly of primary and nonprimary roots.
//! - [`perron`]: Perron-Frobenius data, primitivity, eventual positivity and
//!   the power index.
//! - [`enumroots`]: counting and enumerating the real and eventually positive
//!   roots.

pub mod branches;
pub mod eigen;
pub mod enumroots;
mod error;
pub mod matcore;
pub mod matfun;
pub mod perron;
pub mod rjcf;

pub use error::{Error, Result};
pub use matcore::{ComplexMatrix, Matrix, RealMatrix, Scalar, Tolerance};
pub use num_complex::Complex64;

pub use eigen::{AscentSequence, JordanStructure, SpectrumSummary};
pub use enumroots::RootCatalog;
pub use matfun::{BranchAssignment, CommutantParameter, PairIndex, RootMatrix, RootReport};
pub use perron::{PerronReport, PowerIndexResult};
pub use rjcf::{RealBlockSpec, RealJordanDecomposition};
