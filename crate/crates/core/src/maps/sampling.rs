//! Random matrices and points shared by the map generators.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::Result;
use crate::linalg::{spectral_radius, CMatrix};

/// Generator for `(seed, stream)`: each trial of a campaign owns one stream,
/// so any trial can be replayed from the pair alone.
pub fn trial_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Standard complex Gaussian (unit variance in total).
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn gaussian_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    CMatrix::from_fn(n, |_, _| complex_gaussian(rng))
}

/// Uniform point in the disc of radius `rmax`.
pub fn disc_point<R: Rng + ?Sized>(rmax: f64, rng: &mut R) -> Complex64 {
    let r = rmax * rng.random::<f64>().sqrt();
    Complex64::from_polar(r, std::f64::consts::TAU * rng.random::<f64>())
}

/// Haar-ish unitary from Gram–Schmidt (two passes) on a Gaussian matrix.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let g = gaussian_matrix(n, rng);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v: Vec<Complex64> = (0..n).map(|i| g[(i, j)]).collect();
        for _ in 0..2 {
            for q in &cols {
                let d: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= d * qi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    CMatrix::from_fn(n, |i, j| cols[j][i])
}

/// `S = Q1 diag(σ) Q2` with `σ` log-uniform on `[1, kappa_max]`, returned
/// with its inverse `Q2* diag(1/σ) Q1*`, so `cond(S) ≤ kappa_max`.
pub fn random_similarity<R: Rng + ?Sized>(n: usize, kappa_max: f64, rng: &mut R) -> (CMatrix, CMatrix) {
    let q1 = random_unitary(n, rng);
    let q2 = random_unitary(n, rng);
    let sigma: Vec<f64> = (0..n).map(|_| kappa_max.powf(rng.random::<f64>())).collect();
    let d = CMatrix::from_diag(&sigma.iter().map(|&s| Complex64::new(s, 0.0)).collect::<Vec<_>>());
    let d_inv = CMatrix::from_diag(&sigma.iter().map(|&s| Complex64::new(1.0 / s, 0.0)).collect::<Vec<_>>());
    let s = q1.matmul(&d).matmul(&q2);
    let s_inv = q2.conj_transpose().matmul(&d_inv).matmul(&q1.conj_transpose());
    (s, s_inv)
}

/// Gaussian matrix rescaled to spectral radius `radius`.
pub fn matrix_with_radius<R: Rng + ?Sized>(n: usize, radius: f64, rng: &mut R) -> Result<CMatrix> {
    let g = gaussian_matrix(n, rng);
    let r = spectral_radius(&g)?;
    Ok(g.scale(Complex64::new(radius / r, 0.0)))
}
