//! Eigenvalues of dense complex matrices: Householder reduction to upper
//! Hessenberg form followed by single-shift complex QR with Wilkinson shifts
//! and exceptional shifts every tenth iteration on a stalled block.
//!
//! Backward stable: the computed eigenvalues are exact for `A + E` with
//! `‖E‖ ≤ tol_eig = EIG_TOL_CONSTANT · n · ε · ‖A‖`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::CMatrix;
use crate::error::{Error, Result};

/// Constant `c` in the backward-error contract `c · n · ε · ‖A‖`.
pub const EIG_TOL_CONSTANT: f64 = 100.0;

const MAX_ITERS_PER_EIGENVALUE: usize = 60;

/// All eigenvalues of a matrix, repeated according to algebraic multiplicity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigList {
    pub values: Vec<Complex64>,
}

impl EigList {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn max_modulus(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Backward-error bound `c · n · ε · ‖A‖_F` promised by [`eigenvalues`].
pub fn eig_tolerance(a: &CMatrix) -> f64 {
    EIG_TOL_CONSTANT * a.n() as f64 * f64::EPSILON * a.frobenius_norm()
}

pub fn eigenvalues(a: &CMatrix) -> Result<EigList> {
    if !a.is_finite() {
        return Err(Error::invalid("eigenvalues: non-finite entries"));
    }
    let n = a.n();
    if n == 1 {
        return Ok(EigList {
            values: vec![a[(0, 0)]],
        });
    }
    let mut h = a.clone();
    hessenberg_in_place(&mut h);
    let values = hessenberg_qr(&mut h).map_err(|reason| Error::numerical(reason, Some(a)))?;
    Ok(EigList { values })
}

/// Plain spectral radius: the largest eigenvalue modulus.
pub fn spectral_radius(a: &CMatrix) -> Result<f64> {
    Ok(eigenvalues(a)?.max_modulus())
}

/// `spectral_radius(A) < 1 - margin`.
pub fn in_spectral_ball(a: &CMatrix, margin: f64) -> Result<bool> {
    if !(margin >= 0.0) {
        return Err(Error::invalid("margin must be non-negative"));
    }
    Ok(spectral_radius(a)? < 1.0 - margin)
}

fn hessenberg_in_place(h: &mut CMatrix) {
    let n = h.n();
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n.saturating_sub(2) {
        let norm_x: f64 = ((k + 1)..n).map(|i| h[(i, k)].norm_sqr()).sum::<f64>().sqrt();
        if norm_x == 0.0 {
            continue;
        }
        let x0 = h[(k + 1, k)];
        let phase = if x0.norm() == 0.0 {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * norm_x;
        for i in (k + 1)..n {
            v[i] = h[(i, k)];
        }
        v[k + 1] -= alpha;
        let vnorm: f64 = ((k + 1)..n).map(|i| v[i].norm_sqr()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            continue;
        }
        for i in (k + 1)..n {
            v[i] /= vnorm;
        }
        // H <- (I - 2 v v*) H
        for j in k..n {
            let dot: Complex64 = ((k + 1)..n).map(|i| v[i].conj() * h[(i, j)]).sum();
            for i in (k + 1)..n {
                let vi = v[i];
                h[(i, j)] -= vi * dot * 2.0;
            }
        }
        // H <- H (I - 2 v v*)
        for i in 0..n {
            let dot: Complex64 = ((k + 1)..n).map(|j| h[(i, j)] * v[j]).sum();
            for j in (k + 1)..n {
                let vj = v[j].conj();
                h[(i, j)] -= dot * vj * 2.0;
            }
        }
        h[(k + 1, k)] = alpha;
        for i in (k + 2)..n {
            h[(i, k)] = Complex64::new(0.0, 0.0);
        }
    }
}

fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mid = (a + d) * 0.5;
    let l1 = mid + disc;
    let l2 = mid - disc;
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Givens rotation `[c s; -conj(s) c]` mapping `(a, b)` to `(r, 0)`.
fn givens(a: Complex64, b: Complex64) -> (f64, Complex64) {
    let na = a.norm();
    let nb = b.norm();
    if nb == 0.0 {
        return (1.0, Complex64::new(0.0, 0.0));
    }
    if na == 0.0 {
        return (0.0, b.conj() / nb);
    }
    let r = na.hypot(nb);
    (na / r, (a / na) * b.conj() / r)
}

fn hessenberg_qr(h: &mut CMatrix) -> std::result::Result<Vec<Complex64>, String> {
    let n = h.n();
    let eps = f64::EPSILON;
    let small = f64::MIN_POSITIVE * n as f64 / eps;
    let mut eig = vec![Complex64::new(0.0, 0.0); n];
    let mut rot: Vec<(f64, Complex64)> = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut its = 0usize;
    let mut total = 0usize;
    let limit = MAX_ITERS_PER_EIGENVALUE * n;

    loop {
        if hi == 0 {
            eig[0] = h[(0, 0)];
            break;
        }
        // Locate the start of the unreduced trailing block.
        let mut lo = hi;
        while lo > 0 {
            let s = h[(lo, lo - 1)].norm();
            let mut tst = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            if tst == 0.0 {
                if lo >= 2 {
                    tst += h[(lo - 1, lo - 2)].norm();
                }
                if lo < hi {
                    tst += h[(lo + 1, lo)].norm();
                }
            }
            if s <= eps * tst || s <= small {
                h[(lo, lo - 1)] = Complex64::new(0.0, 0.0);
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            eig[hi] = h[(hi, hi)];
            hi -= 1;
            its = 0;
            continue;
        }

        its += 1;
        total += 1;
        if total > limit {
            return Err(format!("QR iteration did not converge after {limit} sweeps"));
        }

        let mu = if its % 10 == 0 {
            // Exceptional shift breaks cycles (e.g. exact cyclic shifts).
            h[(hi, hi)] + Complex64::new(0.75 * h[(hi, hi - 1)].re.abs() + 0.5 * h[(hi, hi - 1)].im.abs(), 0.0)
        } else if its % 10 == 5 {
            h[(lo, lo)] + Complex64::new(0.75 * h[(lo + 1, lo)].norm(), 0.0)
        } else {
            wilkinson_shift(
                h[(hi - 1, hi - 1)],
                h[(hi - 1, hi)],
                h[(hi, hi - 1)],
                h[(hi, hi)],
            )
        };

        for i in lo..=hi {
            h[(i, i)] -= mu;
        }
        rot.clear();
        for k in lo..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            rot.push((c, s));
            for j in k..=hi {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = x * c + s * y;
                h[(k + 1, j)] = -s.conj() * x + y * c;
            }
        }
        for (idx, &(c, s)) in rot.iter().enumerate() {
            let k = lo + idx;
            for i in lo..=(k + 1).min(hi) {
                let x = h[(i, k)];
                let y = h[(i, k + 1)];
                h[(i, k)] = x * c + y * s.conj();
                h[(i, k + 1)] = -x * s + y * c;
            }
        }
        for i in lo..=hi {
            h[(i, i)] += mu;
        }
    }
    Ok(eig)
}
