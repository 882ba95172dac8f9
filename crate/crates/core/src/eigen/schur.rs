//! Complex Schur form by Householder reduction to Hessenberg form followed by
//! single-shift QR iteration with Wilkinson shifts.

use num_complex::Complex64;

use crate::matcore::{ComplexMatrix, RealMatrix, Tolerance};
use crate::{Error, Result};

const DEFLATION: f64 = f64::EPSILON;
const ITERATIONS_PER_ROW: usize = 50;

/// `A = Q T Q*` with `Q` unitary and `T` upper triangular.
#[derive(Debug, Clone)]
pub struct ComplexSchur {
    pub q: ComplexMatrix,
    pub t: ComplexMatrix,
    pub iterations: usize,
}

impl ComplexSchur {
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        (0..self.t.rows()).map(|i| self.t[(i, i)]).collect()
    }
}

pub fn complex_schur(a: &ComplexMatrix, _tol: &Tolerance) -> Result<ComplexSchur> {
    let n = a.ensure_square()?;
    let scale = a.max_abs();
    if scale == 0.0 {
        return Ok(ComplexSchur {
            q: ComplexMatrix::identity(n),
            t: a.clone(),
            iterations: 0,
        });
    }
    let mut h = a.scale(Complex64::new(1.0 / scale, 0.0));
    let mut q = ComplexMatrix::identity(n);
    hessenberg(&mut h, &mut q);
    let iterations = qr_iterate(&mut h, &mut q)?;
    for i in 0..n {
        for j in 0..i {
            h[(i, j)] = Complex64::new(0.0, 0.0);
        }
    }
    Ok(ComplexSchur {
        q,
        t: h.scale(Complex64::new(scale, 0.0)),
        iterations,
    })
}

/// Eigenvalues of a real matrix, in Schur diagonal order.
pub fn eigenvalues(a: &RealMatrix, tol: &Tolerance) -> Result<Vec<Complex64>> {
    Ok(complex_schur(&a.to_complex(), tol)?.eigenvalues())
}

fn hessenberg(h: &mut ComplexMatrix, q: &mut ComplexMatrix) {
    let n = h.rows();
    for k in 0..n.saturating_sub(2) {
        let x: Vec<Complex64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() > 0.0 {
            x[0] / x[0].norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        let mut v = x;
        v[0] += phase * norm;
        let vnorm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for z in &mut v {
            *z /= vnorm;
        }
        // H <- (I - 2vv*) H (I - 2vv*), Q <- Q (I - 2vv*)
        for j in 0..n {
            let s: Complex64 = (0..v.len()).map(|i| v[i].conj() * h[(k + 1 + i, j)]).sum();
            for i in 0..v.len() {
                h[(k + 1 + i, j)] -= v[i] * s * 2.0;
            }
        }
        for m in [&mut *h, &mut *q] {
            for i in 0..n {
                let s: Complex64 = (0..v.len()).map(|l| m[(i, k + 1 + l)] * v[l]).sum();
                for l in 0..v.len() {
                    m[(i, k + 1 + l)] -= s * v[l].conj() * 2.0;
                }
            }
        }
        for i in k + 2..n {
            h[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
}

/// Rotation `[[c, s], [-conj(s), c]]` mapping `(x, y)` to `(r, 0)`.
fn givens(x: Complex64, y: Complex64) -> (f64, Complex64) {
    let (ax, ay) = (x.norm(), y.norm());
    if ay == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if ax == 0.0 {
        return (0.0, y.conj() / ay);
    }
    let norm = ax.hypot(ay);
    (ax / norm, (x / ax) * y.conj() / norm)
}

fn qr_iterate(h: &mut ComplexMatrix, q: &mut ComplexMatrix) -> Result<usize> {
    let n = h.rows();
    let cap = ITERATIONS_PER_ROW * n;
    let floor = f64::EPSILON * h.frobenius();
    let mut total = 0;
    let mut since_deflation = 0;
    let mut hi = n.saturating_sub(1);
    while hi > 0 {
        // find the start of the active unreduced block
        let mut lo = hi;
        while lo > 0 {
            let sub = h[(lo, lo - 1)].norm();
            let diag = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if sub <= (DEFLATION * diag).max(floor) {
                h[(lo, lo - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            since_deflation = 0;
            continue;
        }
        total += 1;
        since_deflation += 1;
        if total > cap {
            return Err(Error::NoConvergence { iterations: total });
        }

        let shift = if since_deflation % 11 == 10 {
            // exceptional shift to break cycles
            let extra = if hi >= 2 { h[(hi - 1, hi - 2)].norm() } else { 0.0 };
            h[(hi, hi)] + 0.75 * (h[(hi, hi - 1)].norm() + extra)
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };

        let mut x = h[(lo, lo)] - shift;
        let mut y = h[(lo + 1, lo)];
        for k in lo..hi {
            let (c, s) = givens(x, y);
            let first_col = if k > lo { k - 1 } else { lo };
            for j in first_col..n {
                let (a, b) = (h[(k, j)], h[(k + 1, j)]);
                h[(k, j)] = a * c + s * b;
                h[(k + 1, j)] = -s.conj() * a + b * c;
            }
            let last_row = (k + 2).min(hi);
            for i in 0..=last_row {
                let (a, b) = (h[(i, k)], h[(i, k + 1)]);
                h[(i, k)] = a * c + b * s.conj();
                h[(i, k + 1)] = -a * s + b * c;
            }
            for i in 0..n {
                let (a, b) = (q[(i, k)], q[(i, k + 1)]);
                q[(i, k)] = a * c + b * s.conj();
                q[(i, k + 1)] = -a * s + b * c;
            }
            if k + 1 < hi {
                x = h[(k + 1, k)];
                y = h[(k + 2, k)];
            }
        }
    }
    Ok(total)
}

/// Eigenvalue of `[[a, b], [c, d]]` closer to `d`.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let center = (a + d) * 0.5;
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let (r1, r2) = (center + disc, center - disc);
    if (r1 - d).norm() <= (r2 - d).norm() {
        r1
    } else {
        r2
    }
}
