use num_complex::Complex64;

use super::CMatrix;
use crate::error::{Error, Result};

/// Pivots below this multiple of `n * eps * max|a_ij|` are treated as singular.
const PIVOT_SAFETY: f64 = 16.0;

/// LU factorization with partial pivoting, `P A = L U`.
#[derive(Debug, Clone)]
pub struct Lu {
    lu: CMatrix,
    perm: Vec<usize>,
}

impl Lu {
    pub fn factor(a: &CMatrix) -> Result<Self> {
        let n = a.n();
        let mut lu = a.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let tiny = PIVOT_SAFETY * n as f64 * f64::EPSILON * a.max_abs();

        for k in 0..n {
            let (p, best) = (k..n)
                .map(|i| (i, lu[(i, k)].norm()))
                .fold((k, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
            if best <= tiny || best == 0.0 {
                return Err(Error::numerical(
                    format!("near-singular pivot {best:e} at column {k}"),
                    Some(a),
                ));
            }
            if p != k {
                perm.swap(p, k);
                for j in 0..n {
                    let t = lu[(k, j)];
                    lu[(k, j)] = lu[(p, j)];
                    lu[(p, j)] = t;
                }
            }
            let pivot = lu[(k, k)];
            for i in (k + 1)..n {
                let f = lu[(i, k)] / pivot;
                lu[(i, k)] = f;
                if f != Complex64::new(0.0, 0.0) {
                    for j in (k + 1)..n {
                        let u = lu[(k, j)];
                        lu[(i, j)] -= f * u;
                    }
                }
            }
        }
        Ok(Lu { lu, perm })
    }

    /// Solves `A X = B` column by column.
    pub fn solve(&self, b: &CMatrix) -> CMatrix {
        let n = self.lu.n();
        let mut x = CMatrix::zeros(n);
        let mut col = vec![Complex64::new(0.0, 0.0); n];
        for c in 0..n {
            for i in 0..n {
                col[i] = b[(self.perm[i], c)];
            }
            for i in 0..n {
                for k in 0..i {
                    let l = self.lu[(i, k)];
                    let ck = col[k];
                    col[i] -= l * ck;
                }
            }
            for i in (0..n).rev() {
                for k in (i + 1)..n {
                    let u = self.lu[(i, k)];
                    let ck = col[k];
                    col[i] -= u * ck;
                }
                col[i] /= self.lu[(i, i)];
            }
            for i in 0..n {
                x[(i, c)] = col[i];
            }
        }
        x
    }
}

/// `A^{-1} B`
pub fn solve(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    Ok(Lu::factor(a)?.solve(b))
}

pub fn inverse(a: &CMatrix) -> Result<CMatrix> {
    solve(a, &CMatrix::identity(a.n()))
}
