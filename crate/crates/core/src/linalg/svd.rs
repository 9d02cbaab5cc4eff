//! One-sided (Hestenes) Jacobi SVD. Small dense matrices only; accuracy in
//! the small singular values is what the rank probes need.

use num_complex::Complex64;

use super::CMatrix;

const MAX_SWEEPS: usize = 80;

/// `A V = W` with orthogonal columns `W[:, i] = σ_i u_i`, sorted by
/// descending singular value.
#[derive(Debug, Clone)]
pub struct Svd {
    pub sigma: Vec<f64>,
    pub v: CMatrix,
    pub av: CMatrix,
}

pub fn svd(a: &CMatrix) -> Svd {
    let n = a.n();
    // Work on columns: store column-major copies for contiguous access.
    let mut w: Vec<Vec<Complex64>> = (0..n).map(|j| (0..n).map(|i| a[(i, j)]).collect()).collect();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0))
                .collect()
        })
        .collect();

    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let alpha: f64 = w[p].iter().map(|z| z.norm_sqr()).sum();
                let beta: f64 = w[q].iter().map(|z| z.norm_sqr()).sum();
                let gamma: Complex64 = w[p].iter().zip(&w[q]).map(|(x, y)| x.conj() * y).sum();
                let g = gamma.norm();
                if g == 0.0 || g <= f64::EPSILON * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // Remove the phase of gamma, then a real Jacobi rotation.
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for cols in [&mut w, &mut v] {
                    let (left, right) = cols.split_at_mut(q);
                    let cp = &mut left[p];
                    let cq = &mut right[0];
                    for (x, y) in cp.iter_mut().zip(cq.iter_mut()) {
                        let yq = *y * phase;
                        let xp = *x;
                        *x = xp * c - yq * s;
                        *y = xp * s + yq * c;
                    }
                }
            }
        }
        if !rotated {
            break;
        }
    }

    let norms: Vec<f64> = w
        .iter()
        .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].partial_cmp(&norms[i]).unwrap_or(std::cmp::Ordering::Equal));

    let sigma = order.iter().map(|&i| norms[i]).collect();
    let vm = CMatrix::from_fn(n, |i, j| v[order[j]][i]);
    let av = CMatrix::from_fn(n, |i, j| w[order[j]][i]);
    Svd { sigma, v: vm, av }
}

pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    svd(a).sigma
}
