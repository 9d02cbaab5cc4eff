//! Independent minimal-polynomial oracle: the first linear dependence among
//! the vectorized powers `I, A, A², …`, factored with a scalar root finder.
//! Shares nothing with the rank probe except the final matching of roots to
//! cluster representatives.

use num_complex::Complex64;

use super::minpoly::{analyze, MinPoly, MinPolyRoot, DEFAULT_MINPOLY_TOL};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Relative least-squares residual below which `vec(A^k)` is declared
/// dependent on the lower powers.
pub const KRYLOV_RESIDUAL_TOL: f64 = 1e-9;

pub fn krylov_minpoly_oracle(a: &CMatrix) -> Result<MinPoly> {
    krylov_minpoly_oracle_with(a, KRYLOV_RESIDUAL_TOL)
}

pub fn krylov_minpoly_oracle_with(a: &CMatrix, residual_tol: f64) -> Result<MinPoly> {
    let n = a.n();
    let scale = a.frobenius_norm();
    if scale == 0.0 {
        return Ok(MinPoly::from_roots(vec![MinPolyRoot {
            root: Complex64::new(0.0, 0.0),
            mult: 1,
        }]));
    }
    let b = a.scale(Complex64::new(1.0 / scale, 0.0));

    let mut q: Vec<Vec<Complex64>> = Vec::new();
    let mut r: Vec<Vec<Complex64>> = Vec::new(); // r[j] = column j of R
    let mut power = CMatrix::identity(n);
    let mut coeffs: Option<Vec<Complex64>> = None;

    for k in 0..=n {
        let v: Vec<Complex64> = power.data().to_vec();
        let vnorm = norm(&v);
        let mut h = vec![Complex64::new(0.0, 0.0); q.len()];
        let mut res = v.clone();
        for _pass in 0..2 {
            for (j, qj) in q.iter().enumerate() {
                let d: Complex64 = qj.iter().zip(&res).map(|(x, y)| x.conj() * y).sum();
                h[j] += d;
                for (ri, &qi) in res.iter_mut().zip(qj) {
                    *ri -= d * qi;
                }
            }
        }
        let rnorm = norm(&res);
        if k > 0 && (rnorm <= residual_tol * vnorm || k == n) {
            // Solve R c = h, then p(x) = x^k - Σ c_i x^i.
            let mut c = vec![Complex64::new(0.0, 0.0); k];
            for i in (0..k).rev() {
                let mut s = h[i];
                for j in (i + 1)..k {
                    s -= r[j][i] * c[j];
                }
                c[i] = s / r[i][i];
            }
            let mut p: Vec<Complex64> = c.iter().map(|&x| -x).collect();
            p.push(Complex64::new(1.0, 0.0));
            coeffs = Some(p);
            break;
        }
        let mut col = h;
        col.push(Complex64::new(rnorm, 0.0));
        r.push(col);
        q.push(res.iter().map(|&x| x / rnorm).collect());
        power = power.matmul(&b);
    }

    let coeffs = coeffs.ok_or_else(|| Error::numerical("no power dependence found", Some(a)))?;
    let degree = coeffs.len() - 1;
    let roots: Vec<Complex64> = aberth_roots(&coeffs)?
        .into_iter()
        .map(|z| z * scale)
        .collect();

    // Attach each polynomial root to the nearest cluster representative.
    let clusters = analyze(a, DEFAULT_MINPOLY_TOL)?.spectrum.values();
    let mut counts = vec![0usize; clusters.len()];
    for z in &roots {
        let (best, _) = clusters
            .iter()
            .enumerate()
            .map(|(i, c)| (i, (c - z).norm()))
            .fold((0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc });
        counts[best] += 1;
    }
    let found = clusters
        .iter()
        .zip(&counts)
        .filter(|(_, &m)| m > 0)
        .map(|(&root, &mult)| MinPolyRoot { root, mult })
        .collect();
    let p = MinPoly::from_roots(found);
    debug_assert_eq!(p.degree, degree);
    Ok(p)
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// All roots of `Σ coeffs[i] x^i` by Aberth–Ehrlich iteration.
pub fn aberth_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let deg = coeffs.len().saturating_sub(1);
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[deg];
    if lead.norm() == 0.0 {
        return Err(Error::invalid("leading coefficient is zero"));
    }
    let monic: Vec<Complex64> = coeffs.iter().map(|&c| c / lead).collect();
    // Cauchy bound on root moduli.
    let bound = 1.0 + monic[..deg].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::from_polar(0.5 * bound, 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / deg as f64 + 0.4))
        .collect();

    let eval = |x: Complex64| -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in monic.iter().rev() {
            dp = dp * x + p;
            p = p * x + c;
        }
        (p, dp)
    };

    for _ in 0..2000 {
        let mut max_step: f64 = 0.0;
        for i in 0..deg {
            let (p, dp) = eval(z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..deg)
                .filter(|&j| j != i)
                .map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j]))
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if max_step < 1e-15 {
            break;
        }
    }
    if z.iter().any(|x| !x.re.is_finite() || !x.im.is_finite()) {
        return Err(Error::numerical("root finder diverged", None));
    }
    Ok(z)
}
