#![allow(dead_code)]

use std::path::PathBuf;

use perron_roots::matcore::parse_matrix;
use perron_roots::rjcf::{parse_factorization, FactorizationFile};
use perron_roots::RealMatrix;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

pub fn load_matrix(name: &str) -> RealMatrix {
    parse_matrix(&std::fs::read_to_string(data_path(name)).unwrap()).unwrap()
}

pub fn load_factorization(name: &str) -> FactorizationFile {
    parse_factorization(&std::fs::read_to_string(data_path(name)).unwrap()).unwrap()
}

use perron_roots::matcore::mat_inv;
use perron_roots::rjcf::{RealBlockSpec, RealJordanDecomposition};
use perron_roots::{Complex64, Tolerance};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// What kinds of non-Perron eigenvalues a generated matrix may have.
#[derive(Debug, Clone, Copy)]
pub struct SpectrumKinds {
    pub negative: bool,
    pub complex: bool,
}

/// A positive (hence primitive) matrix built from a prescribed spectrum.
#[derive(Debug, Clone)]
pub struct Constructed {
    pub decomp: RealJordanDecomposition,
    /// Distinct positive reals, including the Perron value.
    pub r1: usize,
    pub r2: usize,
    pub c: usize,
}

impl Constructed {
    pub fn a(&self) -> &RealMatrix {
        self.decomp.matrix()
    }
}

/// Eigenvalues for the non-Perron part: moduli in `[0.15, 0.9]`, pairwise
/// at least `0.08` apart (conjugates included).
fn draw_spectrum(rng: &mut ChaCha8Rng, dims: usize, kinds: SpectrumKinds) -> (Vec<f64>, Vec<Complex64>) {
    let mut reals: Vec<f64> = Vec::new();
    let mut pairs: Vec<Complex64> = Vec::new();
    let far = |v: Complex64, reals: &[f64], pairs: &[Complex64]| {
        reals.iter().all(|&r| (Complex64::new(r, 0.0) - v).norm() > 0.08)
            && pairs
                .iter()
                .all(|&q| (q - v).norm() > 0.08 && (q.conj() - v).norm() > 0.08)
            && (v - Complex64::new(1.0, 0.0)).norm() > 0.08
    };
    let mut left = dims;
    while left > 0 {
        let want_pair = kinds.complex && left >= 2 && rng.random_bool(0.5);
        for _ in 0..1000 {
            let modulus = rng.random_range(0.15..0.9);
            if want_pair {
                let theta = rng.random_range(0.3..std::f64::consts::PI - 0.3);
                let v = Complex64::from_polar(modulus, theta);
                if far(v, &reals, &pairs) && far(v.conj(), &reals, &pairs) {
                    pairs.push(v);
                    left -= 2;
                    break;
                }
            } else {
                let sign = if kinds.negative && rng.random_bool(0.4) { -1.0 } else { 1.0 };
                let v = sign * modulus;
                if far(Complex64::new(v, 0.0), &reals, &pairs) {
                    reals.push(v);
                    left -= 1;
                    break;
                }
            }
        }
    }
    (reals, pairs)
}

/// `A = R (1 ⊕ t J') R^-1` with `R = [x | V]`, `x, y > 0`, `y^T x = 1`,
/// `y^T V = 0`; `t` shrinks the non-Perron part until `A > 0`. With
/// `stochastic`, `x` is the all-ones vector so `A` has unit row sums.
pub fn random_primitive(rng: &mut ChaCha8Rng, n: usize, kinds: SpectrumKinds, stochastic: bool) -> Constructed {
    let tol = Tolerance::default();
    loop {
        let x: Vec<f64> = (0..n)
            .map(|_| if stochastic { 1.0 } else { rng.random_range(0.5..1.5) })
            .collect();
        let mut y: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..1.5)).collect();
        let yx: f64 = y.iter().zip(&x).map(|(a, b)| a * b).sum();
        y.iter_mut().for_each(|v| *v /= yx);

        let mut r = RealMatrix::zeros(n, n);
        r.set_column(0, &x);
        for col in 1..n {
            let w: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            let yw: f64 = y.iter().zip(&w).map(|(a, b)| a * b).sum();
            let v: Vec<f64> = w.iter().zip(&x).map(|(wi, xi)| wi - xi * yw).collect();
            r.set_column(col, &v);
        }
        let Ok(r_inv) = mat_inv(&r, &tol) else { continue };
        if r.norm_inf() * r_inv.norm_inf() > 1e3 {
            continue;
        }

        let (reals, pairs) = draw_spectrum(rng, n - 1, kinds);
        let blocks = |t: f64| -> Vec<RealBlockSpec> {
            std::iter::once(RealBlockSpec::RealEigenBlock { lambda: 1.0, k: 1 })
                .chain(reals.iter().map(|&l| RealBlockSpec::RealEigenBlock { lambda: t * l, k: 1 }))
                .chain(pairs.iter().map(|&l| RealBlockSpec::ComplexPairBlock { lambda: l * t, k: 1 }))
                .collect()
        };
        let unit = RealJordanDecomposition::new(r.clone(), blocks(1.0), &tol).unwrap();
        // split A(1) into the rank-one Perron part and the rest
        let mut perron = RealMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                perron[(i, j)] = x[i] * y[j];
            }
        }
        let rest = unit.matrix() - &perron;
        let min_perron = perron.as_slice().iter().copied().fold(f64::INFINITY, f64::min);
        let t = (0.5 * min_perron / rest.max_abs().max(1e-300)).min(1.0);
        let Ok(decomp) = RealJordanDecomposition::new(r, blocks(t), &tol) else { continue };
        if decomp.matrix().as_slice().iter().any(|&v| v <= 0.0) {
            continue;
        }
        return Constructed {
            decomp,
            r1: 1 + reals.iter().filter(|&&l| l > 0.0).count(),
            r2: reals.iter().filter(|&&l| l < 0.0).count(),
            c: pairs.len(),
        };
    }
}

/// Real primary root count from the generating spectrum.
pub fn real_primary_formula(r1: usize, r2: usize, c: usize, p: usize) -> u128 {
    let pc = (p as u128).pow(c as u32);
    if p % 2 == 1 {
        pc
    } else if r2 == 0 {
        (1u128 << r1) * pc
    } else {
        0
    }
}

/// Eventually positive primary root count from the generating spectrum.
pub fn ev_positive_formula(r1: usize, r2: usize, c: usize, p: usize) -> u128 {
    let pc = (p as u128).pow(c as u32);
    if p % 2 == 1 {
        pc
    } else if r2 == 0 {
        (1u128 << (r1 - 1)) * pc
    } else {
        0
    }
}
