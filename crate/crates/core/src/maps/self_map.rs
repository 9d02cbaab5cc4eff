use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::sampling::{disc_point, matrix_with_radius, random_similarity, trial_rng};
use crate::error::{Error, Result};
use crate::extremal::extremal_block;
use crate::hyperbolic::{BlaschkeFactor, BlaschkeProduct};
use crate::linalg::{inverse, spectral_radius, svd, CMatrix};

/// Largest condition number accepted for a similarity node.
pub const MAX_SIMILARITY_COND: f64 = 1e6;

/// A holomorphic self-map of the spectral unit ball, as an expression tree
/// whose every node maps the ball into itself.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SelfMapSpec {
    /// `X ↦ θ B(X)` with `|θ| ≤ 1`.
    FunctionalCalculus { blaschke: BlaschkeProduct, theta: Complex64 },
    /// `X ↦ N_d(tr X / n) ⊕ (tr X / n) I_{n-d}`.
    Extremal { n: usize, d: usize },
    /// `X ↦ S X S⁻¹`.
    Similarity { s: CMatrix, s_inv: CMatrix },
    /// `X ↦ C`.
    Constant { c: CMatrix },
    /// Applied left to right: `compose([G, H])(X) = H(G(X))`.
    Compose { maps: Vec<SelfMapSpec> },
}

impl SelfMapSpec {
    pub fn identity() -> Self {
        SelfMapSpec::FunctionalCalculus { blaschke: BlaschkeProduct::identity(), theta: Complex64::new(1.0, 0.0) }
    }

    pub fn functional_calculus(blaschke: BlaschkeProduct, theta: Complex64) -> Result<Self> {
        if !(theta.norm() <= 1.0) {
            return Err(Error::invalid(format!("|theta| = {} exceeds 1", theta.norm())));
        }
        Ok(SelfMapSpec::FunctionalCalculus { blaschke, theta })
    }

    pub fn extremal(n: usize, d: usize) -> Result<Self> {
        if n == 0 || d == 0 || d > n {
            return Err(Error::invalid(format!("need 1 <= d <= n, got n = {n}, d = {d}")));
        }
        Ok(SelfMapSpec::Extremal { n, d })
    }

    pub fn similarity(s: CMatrix) -> Result<Self> {
        let sv = svd::singular_values(&s);
        let cond = sv[0] / sv[sv.len() - 1];
        if !(cond <= MAX_SIMILARITY_COND) {
            return Err(Error::invalid(format!("similarity condition number {cond:e} is too large")));
        }
        let s_inv = inverse(&s)?;
        Ok(SelfMapSpec::Similarity { s, s_inv })
    }

    pub fn constant(c: CMatrix) -> Result<Self> {
        let r = spectral_radius(&c)?;
        if !(r < 1.0) {
            return Err(Error::invalid(format!("constant has spectral radius {r} >= 1")));
        }
        Ok(SelfMapSpec::Constant { c })
    }

    pub fn compose(maps: Vec<SelfMapSpec>) -> Result<Self> {
        if maps.is_empty() {
            return Err(Error::invalid("empty composition"));
        }
        Ok(SelfMapSpec::Compose { maps })
    }

    /// Dimension fixed by the map, if any node pins one.
    pub fn dim(&self) -> Option<usize> {
        match self {
            SelfMapSpec::FunctionalCalculus { .. } => None,
            SelfMapSpec::Extremal { n, .. } => Some(*n),
            SelfMapSpec::Similarity { s, .. } => Some(s.n()),
            SelfMapSpec::Constant { c } => Some(c.n()),
            SelfMapSpec::Compose { maps } => maps.iter().find_map(|m| m.dim()),
        }
    }

    /// `G(X)`; every intermediate value is checked against the ball and a
    /// failure names the offending node.
    pub fn eval(&self, x: &CMatrix) -> Result<CMatrix> {
        let r = spectral_radius(x)?;
        if !(r < 1.0) {
            return Err(Error::invalid(format!("input has spectral radius {r} >= 1")));
        }
        self.eval_node(x, "root")
    }

    fn eval_node(&self, x: &CMatrix, path: &str) -> Result<CMatrix> {
        let n = x.n();
        let out = match self {
            SelfMapSpec::FunctionalCalculus { blaschke, theta } => blaschke.matrix_unchecked(x)?.scale(*theta),
            SelfMapSpec::Extremal { n: m, d } => {
                check_dim(*m, n, path)?;
                extremal_block(n, *d, x.trace() / n as f64)
            }
            SelfMapSpec::Similarity { s, s_inv } => {
                check_dim(s.n(), n, path)?;
                s.matmul(x).matmul(s_inv)
            }
            SelfMapSpec::Constant { c } => {
                check_dim(c.n(), n, path)?;
                c.clone()
            }
            SelfMapSpec::Compose { maps } => {
                let mut cur = x.clone();
                for (i, m) in maps.iter().enumerate() {
                    cur = m.eval_node(&cur, &format!("{path}.compose[{i}]"))?;
                }
                return Ok(cur);
            }
        };
        let r = spectral_radius(&out)?;
        if !(r < 1.0) {
            return Err(Error::GeneratorViolation { path: path.to_string(), radius: r });
        }
        Ok(out)
    }
}

fn check_dim(expected: usize, got: usize, path: &str) -> Result<()> {
    if expected != got {
        return Err(Error::invalid(format!("node {path} expects dimension {expected}, input has {got}")));
    }
    Ok(())
}

pub fn eval_self_map(g: &SelfMapSpec, x: &CMatrix) -> Result<CMatrix> {
    g.eval(x)
}

/// Random expression tree of depth at most `depth` on `n × n` matrices.
pub fn sample_self_map(n: usize, depth: usize, seed: u64) -> Result<SelfMapSpec> {
    sample_self_map_with(n, depth, &mut trial_rng(seed, 0))
}

pub fn sample_self_map_with<R: Rng + ?Sized>(n: usize, depth: usize, rng: &mut R) -> Result<SelfMapSpec> {
    if n == 0 {
        return Err(Error::invalid("dimension must be positive"));
    }
    if depth == 0 {
        return Err(Error::invalid("depth must be at least 1"));
    }
    if depth > 1 && rng.random::<f64>() < 0.6 {
        let k = rng.random_range(2..=3);
        let maps = (0..k)
            .map(|_| sample_self_map_with(n, depth - 1, rng))
            .collect::<Result<Vec<_>>>()?;
        return SelfMapSpec::compose(maps);
    }
    let u: f64 = rng.random();
    if u < 0.35 {
        let k = rng.random_range(1..=3);
        let factors = (0..k)
            .map(|_| BlaschkeFactor::new(disc_point(0.9, rng), rng.random_range(1..=2)))
            .collect::<Result<Vec<_>>>()?;
        let theta = Complex64::from_polar(rng.random_range(0.5..=1.0), std::f64::consts::TAU * rng.random::<f64>());
        SelfMapSpec::functional_calculus(BlaschkeProduct::new(factors)?, theta)
    } else if u < 0.6 {
        SelfMapSpec::extremal(n, rng.random_range(1..=n))
    } else if u < 0.85 {
        let (s, s_inv) = random_similarity(n, 100.0, rng);
        Ok(SelfMapSpec::Similarity { s, s_inv })
    } else {
        let r = 0.95 * rng.random::<f64>();
        SelfMapSpec::constant(matrix_with_radius(n, r, rng)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectrum::{jordan_radius, DEFAULT_MINPOLY_TOL};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_and_extremal() {
        let x = CMatrix::from_real_rows(&[&[0.1, 0.7], &[-0.2, 0.3]]);
        assert_eq!(SelfMapSpec::identity().eval(&x).unwrap(), x);
        let g = SelfMapSpec::extremal(2, 2).unwrap();
        let y = g.eval(&CMatrix::scalar(2, c(0.49, 0.0))).unwrap();
        assert!((jordan_radius(&y, DEFAULT_MINPOLY_TOL).unwrap() - 0.7).abs() < 1e-14);
    }

    #[test]
    fn similarity_then_square() {
        let mut rng = trial_rng(1, 0);
        let (s, s_inv) = random_similarity(3, 10.0, &mut rng);
        let sq = SelfMapSpec::functional_calculus(BlaschkeProduct::from_pairs(&[(c(0.0, 0.0), 2)]).unwrap(), c(1.0, 0.0)).unwrap();
        let g = SelfMapSpec::compose(vec![SelfMapSpec::Similarity { s: s.clone(), s_inv: s_inv.clone() }, sq]).unwrap();
        let x = matrix_with_radius(3, 0.8, &mut rng).unwrap();
        let y = g.eval(&x).unwrap();
        let sxs = s.matmul(&x).matmul(&s_inv);
        assert!((&y - &sxs.matmul(&sxs)).max_abs() < 1e-12);
        assert!((spectral_radius(&y).unwrap() - 0.64).abs() < 1e-10);
    }

    #[test]
    fn bad_constant_and_violation_path() {
        assert!(SelfMapSpec::constant(CMatrix::identity(2)).is_err());
        // Hand-built tree that breaks the contract.
        let bad = SelfMapSpec::Compose {
            maps: vec![SelfMapSpec::identity(), SelfMapSpec::Constant { c: CMatrix::scalar(2, c(2.0, 0.0)) }],
        };
        let err = bad.eval(&CMatrix::zeros(2)).unwrap_err();
        match err {
            Error::GeneratorViolation { path, radius } => {
                assert_eq!(path, "root.compose[1]");
                assert_eq!(radius, 2.0);
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn sampled_maps_respect_contract() {
        let mut rng = trial_rng(4, 0);
        for seed in 0..40 {
            let n = 2 + (seed as usize % 3);
            let g = sample_self_map(n, 3, seed).unwrap();
            for _ in 0..25 {
                let x = matrix_with_radius(n, 0.99 * rng.random::<f64>(), &mut rng).unwrap();
                g.eval(&x).unwrap();
            }
        }
    }

    #[test]
    fn json_roundtrip() {
        let g = sample_self_map(3, 3, 12).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(serde_json::from_str::<SelfMapSpec>(&s).unwrap(), g);
    }
}
