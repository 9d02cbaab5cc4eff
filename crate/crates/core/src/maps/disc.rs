use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::sampling::{gaussian_matrix, trial_rng};
use crate::error::{Error, Result};
use crate::extremal::extremal_block;
use crate::hyperbolic::disc::check_in_disc;
use crate::linalg::{spectral_radius, CMatrix};

/// Number of boundary points used to certify a sampled polynomial map.
pub const BOUNDARY_SAMPLES: usize = 4096;

/// Multiplicative margin absorbing eigenvalue variation between the
/// boundary samples.
pub const CERTIFICATION_SAFETY: f64 = 1.05;

const MAX_RESAMPLES: usize = 10;

/// A holomorphic map from the unit disc into the spectral unit ball.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DiscMapSpec {
    /// `F(ζ) = Σ A_k ζ^k` with `sup_D r(F) ≤ certified_sup < 1`.
    Polynomial { coeffs: Vec<CMatrix>, certified_sup: f64 },
    /// `ζ ↦ N_d(m(ζ)) ⊕ m(ζ) I_{n-d}` with `m(ζ) = (ζ - z)/(1 - conj(z) ζ)`;
    /// equality case of the two-point bound at `(z, w)`.
    Extremal { z: Complex64, w: Complex64, n: usize, d: usize },
    /// `ζ ↦ N_d(ζ) ⊕ ζ I_{n-d}`.
    KeyExample { n: usize, d: usize },
}

impl DiscMapSpec {
    pub fn polynomial(coeffs: Vec<CMatrix>, certified_sup: f64) -> Result<Self> {
        let n = coeffs
            .first()
            .ok_or_else(|| Error::invalid("polynomial map needs at least one coefficient"))?
            .n();
        if coeffs.iter().any(|c| c.n() != n) {
            return Err(Error::invalid("coefficient dimensions differ"));
        }
        if !(0.0..1.0).contains(&certified_sup) {
            return Err(Error::invalid(format!("certified sup {certified_sup} is not in [0, 1)")));
        }
        Ok(DiscMapSpec::Polynomial { coeffs, certified_sup })
    }

    /// `ζ ↦ ζ A`, certified by `r(A) < 1`.
    pub fn linear(a: CMatrix) -> Result<Self> {
        let r = spectral_radius(&a)?;
        let zero = CMatrix::zeros(a.n());
        Self::polynomial(vec![zero, a], r)
    }

    pub fn constant(c: CMatrix) -> Result<Self> {
        let r = spectral_radius(&c)?;
        Self::polynomial(vec![c], r)
    }

    pub fn n(&self) -> usize {
        match self {
            DiscMapSpec::Polynomial { coeffs, .. } => coeffs[0].n(),
            DiscMapSpec::Extremal { n, .. } | DiscMapSpec::KeyExample { n, .. } => *n,
        }
    }

    /// `(ζ - ζ1) F(ζ) / (1 + |ζ1|)`: same certified bound, vanishes at `ζ1`.
    pub fn vanishing_at(&self, zeta1: Complex64) -> Result<Self> {
        check_in_disc(zeta1, "zeta1")?;
        let DiscMapSpec::Polynomial { coeffs, certified_sup } = self else {
            return Err(Error::invalid("only polynomial maps can be multiplied by a factor"));
        };
        let n = coeffs[0].n();
        let s = Complex64::new(1.0 / (1.0 + zeta1.norm()), 0.0);
        let k = coeffs.len();
        let out = (0..=k)
            .map(|i| {
                let mut b = CMatrix::zeros(n);
                if i > 0 {
                    b = &b + &coeffs[i - 1];
                }
                if i < k {
                    b = &b - &coeffs[i].scale(zeta1);
                }
                b.scale(s)
            })
            .collect();
        Self::polynomial(out, *certified_sup)
    }

    /// Evaluation without the membership check.
    pub fn eval_unchecked(&self, zeta: Complex64) -> CMatrix {
        match self {
            DiscMapSpec::Polynomial { coeffs, .. } => {
                let mut acc = coeffs[coeffs.len() - 1].clone();
                for c in coeffs.iter().rev().skip(1) {
                    acc = &acc.scale(zeta) + c;
                }
                acc
            }
            DiscMapSpec::Extremal { z, n, d, .. } => {
                let m = (zeta - z) / (Complex64::new(1.0, 0.0) - z.conj() * zeta);
                extremal_block(*n, *d, m)
            }
            DiscMapSpec::KeyExample { n, d } => extremal_block(*n, *d, zeta),
        }
    }

    /// `F(ζ)`, failing with a generator violation if it leaves the ball.
    pub fn eval(&self, zeta: Complex64) -> Result<CMatrix> {
        check_in_disc(zeta, "zeta")?;
        let m = self.eval_unchecked(zeta);
        let r = spectral_radius(&m)?;
        if !(r < 1.0) {
            return Err(Error::GeneratorViolation { path: "disc_map".into(), radius: r });
        }
        Ok(m)
    }
}

pub fn eval_disc_map(f: &DiscMapSpec, zeta: Complex64) -> Result<CMatrix> {
    f.eval(zeta)
}

/// Largest raw spectral radius of `F` over `count` equispaced points of the
/// unit circle.
pub fn boundary_sup(f: &DiscMapSpec, count: usize) -> Result<f64> {
    let mut s: f64 = 0.0;
    for k in 0..count {
        let zeta = Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / count as f64);
        s = s.max(spectral_radius(&f.eval_unchecked(zeta))?);
    }
    Ok(s)
}

/// Random polynomial map of degree `degree` rescaled so that its boundary
/// sup of the spectral radius is `target / 1.05` (exactly `target` for a
/// constant map).
pub fn sample_disc_map(n: usize, degree: usize, target: f64, seed: u64) -> Result<DiscMapSpec> {
    sample_disc_map_with(n, degree, target, &mut trial_rng(seed, 0))
}

pub fn sample_disc_map_with<R: Rng + ?Sized>(
    n: usize,
    degree: usize,
    target: f64,
    rng: &mut R,
) -> Result<DiscMapSpec> {
    if n == 0 {
        return Err(Error::invalid("dimension must be positive"));
    }
    if !(target > 0.0 && target < 1.0) {
        return Err(Error::invalid(format!("target {target} is not in (0, 1)")));
    }
    let safety = if degree == 0 { 1.0 } else { CERTIFICATION_SAFETY };
    for _ in 0..MAX_RESAMPLES {
        let coeffs: Vec<CMatrix> = (0..=degree).map(|_| gaussian_matrix(n, rng)).collect();
        let raw = DiscMapSpec::Polynomial { coeffs, certified_sup: 0.0 };
        let s = boundary_sup(&raw, if degree == 0 { 1 } else { BOUNDARY_SAMPLES })?;
        if s > 0.0 && s.is_finite() {
            let DiscMapSpec::Polynomial { coeffs, .. } = raw else { unreachable!() };
            let k = Complex64::new(target / (s * safety), 0.0);
            return DiscMapSpec::polynomial(coeffs.iter().map(|c| c.scale(k)).collect(), target);
        }
    }
    Err(Error::numerical("sampled disc maps kept vanishing on the boundary", None))
}
