use num_complex::Complex64;

use crate::matcore::Tolerance;
use crate::{Error, Result};

/// One distinct eigenvalue with its algebraic multiplicity and, once the
/// Jordan structure is known, its index (largest block size).
#[derive(Debug, Clone, PartialEq)]
pub struct DistinctEigenvalue {
    pub value: Complex64,
    pub multiplicity: usize,
    pub index: Option<usize>,
}

impl DistinctEigenvalue {
    pub fn is_real(&self) -> bool {
        self.value.im == 0.0
    }
}

/// Distinct eigenvalues of a real matrix in canonical order: real values
/// descending, then conjugate pairs by decreasing modulus with the
/// `Im > 0` member first.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumSummary {
    pub eigenvalues: Vec<DistinctEigenvalue>,
    /// Total Jordan block count, known after structure recovery.
    pub block_count: Option<usize>,
}

impl SpectrumSummary {
    pub fn new(mut eigenvalues: Vec<DistinctEigenvalue>) -> Result<Self> {
        for e in &eigenvalues {
            if e.multiplicity == 0 {
                return Err(Error::InvalidArgument("zero multiplicity".into()));
            }
            if !e.is_real() {
                let partner = eigenvalues
                    .iter()
                    .filter(|o| o.value == e.value.conj() && o.multiplicity == e.multiplicity)
                    .count();
                if partner != 1 {
                    return Err(Error::UnpairedConjugate { value: e.value });
                }
            }
        }
        sort_canonical(&mut eigenvalues);
        Ok(Self {
            eigenvalues,
            block_count: None,
        })
    }

    /// Distinct eigenvalue count.
    pub fn s(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn t(&self) -> Option<usize> {
        self.block_count
    }

    /// Distinct positive real eigenvalues.
    pub fn r1(&self) -> usize {
        self.reals().filter(|e| e.value.re > 0.0).count()
    }

    /// Distinct negative real eigenvalues.
    pub fn r2(&self) -> usize {
        self.reals().filter(|e| e.value.re < 0.0).count()
    }

    /// Distinct complex-conjugate pairs.
    pub fn c(&self) -> usize {
        self.eigenvalues.iter().filter(|e| e.value.im > 0.0).count()
    }

    pub fn has_zero(&self) -> bool {
        self.reals().any(|e| e.value.re == 0.0)
    }

    pub fn dimension(&self) -> usize {
        self.eigenvalues.iter().map(|e| e.multiplicity).sum()
    }

    pub fn find(&self, value: Complex64) -> Option<&DistinctEigenvalue> {
        self.eigenvalues.iter().find(|e| e.value == value)
    }

    /// Largest modulus over the spectrum.
    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues
            .iter()
            .map(|e| e.value.norm())
            .fold(0.0, f64::max)
    }

    fn reals(&self) -> impl Iterator<Item = &DistinctEigenvalue> {
        self.eigenvalues.iter().filter(|e| e.is_real())
    }
}

fn sort_canonical(ev: &mut [DistinctEigenvalue]) {
    // key: reals first (descending), then pairs by modulus, re, and Im > 0 first
    ev.sort_by(|a, b| {
        let class = |e: &DistinctEigenvalue| u8::from(!e.is_real());
        class(a).cmp(&class(b)).then_with(|| {
            if a.is_real() {
                b.value.re.total_cmp(&a.value.re)
            } else {
                let (ra, rb) = (a.value.norm(), b.value.norm());
                rb.total_cmp(&ra)
                    .then(b.value.re.total_cmp(&a.value.re))
                    .then(b.value.im.abs().total_cmp(&a.value.im.abs()))
                    .then(b.value.im.total_cmp(&a.value.im))
            }
        })
    });
}

/// Greedy single-linkage clustering of computed eigenvalues.
///
/// Values within `tol.cluster_eps * max(1, scale)` of a cluster member join
/// it; a value near two separate clusters is an error. Representatives are
/// cluster means. Representatives with small imaginary part (or small
/// modulus) snap to the real axis (or to zero), and conjugate clusters get
/// exactly conjugate representatives.
pub fn cluster_eigenvalues(raw: &[Complex64], scale: f64, tol: &Tolerance) -> Result<SpectrumSummary> {
    let eps = tol.cluster_eps * scale.max(1.0);
    let mut values = raw.to_vec();
    values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));

    let mut clusters: Vec<Vec<Complex64>> = Vec::new();
    for z in values {
        let near: Vec<usize> = clusters
            .iter()
            .enumerate()
            .filter(|(_, c)| c.iter().any(|w| (w - z).norm() <= eps))
            .map(|(i, _)| i)
            .collect();
        match near.as_slice() {
            [] => clusters.push(vec![z]),
            [i] => clusters[*i].push(z),
            _ => return Err(Error::AmbiguousCluster { value: z }),
        }
    }

    let mut reps: Vec<(Complex64, usize)> = clusters
        .iter()
        .map(|c| {
            let mean = c.iter().sum::<Complex64>() / c.len() as f64;
            let mean = if mean.norm() <= eps {
                Complex64::new(0.0, 0.0)
            } else if mean.im.abs() <= eps {
                Complex64::new(mean.re, 0.0)
            } else {
                mean
            };
            (mean, c.len())
        })
        .collect();

    // force conjugate pairs
    let mut used = vec![false; reps.len()];
    for i in 0..reps.len() {
        if reps[i].0.im <= 0.0 || used[i] {
            continue;
        }
        let target = reps[i].0.conj();
        let partner = (0..reps.len())
            .filter(|&k| !used[k] && reps[k].0.im < 0.0 && reps[k].1 == reps[i].1)
            .min_by(|&a, &b| (reps[a].0 - target).norm().total_cmp(&(reps[b].0 - target).norm()))
            .filter(|&k| (reps[k].0 - target).norm() <= eps);
        let Some(k) = partner else {
            return Err(Error::UnpairedConjugate { value: reps[i].0 });
        };
        let avg = (reps[i].0 + reps[k].0.conj()) * 0.5;
        reps[i].0 = avg;
        reps[k].0 = avg.conj();
        used[i] = true;
        used[k] = true;
    }
    if let Some((z, _)) = reps
        .iter()
        .zip(&used)
        .find(|((z, _), &u)| z.im < 0.0 && !u)
        .map(|(r, _)| r)
    {
        return Err(Error::UnpairedConjugate { value: *z });
    }

    SpectrumSummary::new(
        reps.into_iter()
            .map(|(value, multiplicity)| DistinctEigenvalue {
                value,
                multiplicity,
                index: None,
            })
            .collect(),
    )
}
