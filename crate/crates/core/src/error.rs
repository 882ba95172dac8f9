use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix has a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("matrix is singular to tolerance (pivot {pivot:e} at column {column})")]
    Singular { pivot: f64, column: usize },

    #[error("QR iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("ambiguous eigenvalue clustering near {value}")]
    AmbiguousCluster { value: Complex64 },

    #[error("complex eigenvalue {value} has no conjugate partner")]
    UnpairedConjugate { value: Complex64 },

    #[error("inconsistent rank sequence for eigenvalue {eigenvalue}: {detail}")]
    InconsistentRanks { eigenvalue: Complex64, detail: String },

    #[error("could not extract Jordan chains for eigenvalue {eigenvalue}")]
    ChainExtraction { eigenvalue: Complex64 },

    #[error("reconstruction residual {residual:e} exceeds bound {bound:e}")]
    Reconstruction { residual: f64, bound: f64 },

    #[error("negative eigenvalue {lambda} has an unpaired Jordan block of size {size}")]
    UnpairedNegativeBlock { lambda: f64, size: usize },

    #[error("branch undefined at zero")]
    ZeroArgument,

    #[error("matrix is singular (has a zero eigenvalue)")]
    SingularSpectrum,

    #[error("invalid branch assignment: {0}")]
    InvalidAssignment(String),

    #[error("commutant parameter rejected: {0}")]
    InvalidCommutant(String),

    #[error("no nonsingular commutant draw after {attempts} attempts (basis dimension {dimension})")]
    CommutantSingular { attempts: usize, dimension: usize },

    #[error("matrix is not eventually positive: {0}")]
    NotEventuallyPositive(String),

    #[error("matrix is not nonnegative: entry ({row}, {col}) = {value}")]
    NotNonnegative { row: usize, col: usize, value: f64 },

    #[error("spectral radius is zero to tolerance")]
    ZeroSpectralRadius,

    #[error("decomposition is not derogatory")]
    NotDerogatory,

    #[error("internal consistency failure: {0}")]
    Consistency(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}
