//! Explicit `(R, J_R)` factorization files.
//!
//! ```text
//! # R in the matrix text format
//! 3 3
//! 1 0 0
//! 0 1 0
//! 0 0 1
//! # then one descriptor per block, in J_R order
//! real 2 1
//! cpair 1 1 1
//! ```

use num_complex::Complex64;

use super::{RealBlockSpec, RealJordanDecomposition};
use crate::matcore::text::{format_entry, parse_entry, tokens, MatrixLines};
use crate::matcore::{RealMatrix, Tolerance};
use crate::{Error, Result};

/// Reconstruction bound for supplied factorizations, relative to
/// `max(1, ||A||_inf)`.
pub const EXPLICIT_RECONSTRUCTION_REL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct FactorizationFile {
    pub r: RealMatrix,
    pub blocks: Vec<RealBlockSpec>,
}

impl FactorizationFile {
    /// Trusts the factorization after checking it reproduces `a`.
    pub fn into_decomposition(self, a: &RealMatrix, tol: &Tolerance) -> Result<RealJordanDecomposition> {
        RealJordanDecomposition::validated(a, self.r, self.blocks, EXPLICIT_RECONSTRUCTION_REL, tol)
    }
}

pub fn parse_factorization(text: &str) -> Result<FactorizationFile> {
    let mut lines = MatrixLines::new(text);
    let r = lines.read_matrix()?;
    let mut blocks = Vec::new();
    while let Some((line, content)) = lines.next_line() {
        let toks: Vec<(usize, &str)> = tokens(content).collect();
        let err = |column: usize, message: String| Error::Parse { line, column, message };
        let num = |i: usize| -> Result<f64> {
            let (col, tok) = toks[i];
            parse_entry(tok).map_err(|m| err(col, m))
        };
        let size = |i: usize| -> Result<usize> {
            let (col, tok) = toks[i];
            match tok.parse::<usize>() {
                Ok(k) if k >= 1 => Ok(k),
                _ => Err(err(col, format!("block size must be a positive integer, got `{tok}`"))),
            }
        };
        let block = match toks.first().map(|t| t.1) {
            Some("real") if toks.len() == 3 => RealBlockSpec::RealEigenBlock {
                lambda: num(1)?,
                k: size(2)?,
            },
            Some("cpair") if toks.len() == 4 => RealBlockSpec::ComplexPairBlock {
                lambda: Complex64::new(num(1)?, num(2)?),
                k: size(3)?,
            },
            Some("real") => return Err(err(1, "expected `real λ k`".into())),
            Some("cpair") => return Err(err(1, "expected `cpair re im k`".into())),
            _ => return Err(err(1, format!("unknown block kind `{}`", toks[0].1))),
        };
        block.validate().map_err(|e| err(1, e.to_string()))?;
        blocks.push(block);
    }
    if blocks.is_empty() {
        return Err(Error::Parse {
            line: lines.eof_line(),
            column: 1,
            message: "no block descriptors after R".into(),
        });
    }
    Ok(FactorizationFile { r, blocks })
}

pub fn format_factorization(r: &RealMatrix, blocks: &[RealBlockSpec]) -> String {
    let mut s = crate::matcore::text::format_matrix(r);
    for b in blocks {
        match *b {
            RealBlockSpec::RealEigenBlock { lambda, k } => {
                s.push_str(&format!("real {} {k}\n", format_entry(lambda)));
            }
            RealBlockSpec::ComplexPairBlock { lambda, k } => {
                s.push_str(&format!(
                    "cpair {} {} {k}\n",
                    format_entry(lambda.re),
                    format_entry(lambda.im)
                ));
            }
        }
    }
    s
}
