//! Fixtures shared by the benchmarks.

use perron_roots::matcore::parse_matrix;
use perron_roots::rjcf::parse_factorization;
use perron_roots::{RealJordanDecomposition, RealMatrix, Tolerance};

const EXAMPLE_5X5: &str = include_str!("../../../data/example_5x5.txt");
const EXAMPLE_5X5_FACTORS: &str = include_str!("../../../data/example_5x5.factorization.txt");
const EXAMPLE_9X9: &str = include_str!("../../../data/example_9x9.txt");
const EXAMPLE_9X9_FACTORS: &str = include_str!("../../../data/example_9x9.factorization.txt");

fn explicit(a: &str, factors: &str) -> (RealMatrix, RealJordanDecomposition) {
    let a = parse_matrix(a).expect("fixture parses");
    let d = parse_factorization(factors)
        .expect("fixture parses")
        .into_decomposition(&a, &Tolerance::default())
        .expect("fixture factorization reproduces A");
    (a, d)
}

pub fn example_5x5() -> (RealMatrix, RealJordanDecomposition) {
    explicit(EXAMPLE_5X5, EXAMPLE_5X5_FACTORS)
}

pub fn example_9x9() -> (RealMatrix, RealJordanDecomposition) {
    explicit(EXAMPLE_9X9, EXAMPLE_9X9_FACTORS)
}

/// Dense positive matrix with distinct eigenvalues.
pub fn positive(n: usize) -> RealMatrix {
    let mut m = RealMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = 1.0 + ((3 * i + 7 * j + i * j) % 11) as f64 / 4.0;
        }
    }
    m
}

/// Wielandt matrix of order `n`: power index `(n-1)^2 + 1`.
pub fn wielandt(n: usize) -> RealMatrix {
    let mut m = RealMatrix::zeros(n, n);
    for i in 0..n - 1 {
        m[(i, i + 1)] = 1.0;
    }
    m[(n - 1, 0)] = 1.0;
    m[(n - 1, 1)] = 1.0;
    m
}
