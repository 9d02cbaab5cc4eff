use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::disc::check_in_disc;
use crate::error::{Error, Result};
use crate::linalg::{in_spectral_ball, spectral_radius, CMatrix, Lu};
use crate::spectrum::{minimal_polynomial, MinPoly, DEFAULT_MINPOLY_TOL};

const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// One factor `((ζ - zero) / (1 - conj(zero) ζ))^mult`.
/// Serialized as `{"re", "im", "mult"}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(into = "FactorWire", try_from = "FactorWire")]
pub struct BlaschkeFactor {
    pub zero: Complex64,
    pub mult: u32,
}

#[derive(Serialize, Deserialize)]
struct FactorWire {
    re: f64,
    im: f64,
    mult: u32,
}

impl From<BlaschkeFactor> for FactorWire {
    fn from(f: BlaschkeFactor) -> Self {
        FactorWire { re: f.zero.re, im: f.zero.im, mult: f.mult }
    }
}

impl TryFrom<FactorWire> for BlaschkeFactor {
    type Error = Error;

    fn try_from(w: FactorWire) -> Result<Self> {
        BlaschkeFactor::new(Complex64::new(w.re, w.im), w.mult)
    }
}

impl BlaschkeFactor {
    pub fn new(zero: Complex64, mult: u32) -> Result<Self> {
        check_in_disc(zero, "Blaschke zero")?;
        if mult == 0 {
            return Err(Error::invalid("Blaschke multiplicity must be positive"));
        }
        Ok(BlaschkeFactor { zero, mult })
    }

    #[inline]
    fn eval(&self, z: Complex64) -> Complex64 {
        ((z - self.zero) / (ONE - self.zero.conj() * z)).powu(self.mult)
    }
}

/// Finite Blaschke product, factors kept in input order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ProductWire")]
pub struct BlaschkeProduct {
    factors: Vec<BlaschkeFactor>,
}

#[derive(Deserialize)]
struct ProductWire {
    factors: Vec<BlaschkeFactor>,
}

impl TryFrom<ProductWire> for BlaschkeProduct {
    type Error = Error;

    fn try_from(w: ProductWire) -> Result<Self> {
        BlaschkeProduct::new(w.factors)
    }
}

impl BlaschkeProduct {
    pub fn new(factors: Vec<BlaschkeFactor>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::invalid("Blaschke product needs at least one factor"));
        }
        Ok(BlaschkeProduct { factors })
    }

    /// Convenience constructor from `(zero, mult)` pairs.
    pub fn from_pairs(pairs: &[(Complex64, u32)]) -> Result<Self> {
        let factors = pairs
            .iter()
            .map(|&(z, m)| BlaschkeFactor::new(z, m))
            .collect::<Result<Vec<_>>>()?;
        Self::new(factors)
    }

    /// `B(ζ) = ζ`.
    pub fn identity() -> Self {
        BlaschkeProduct {
            factors: vec![BlaschkeFactor { zero: Complex64::new(0.0, 0.0), mult: 1 }],
        }
    }

    pub fn from_minpoly(p: &MinPoly) -> Result<Self> {
        let pairs: Vec<(Complex64, u32)> = p.roots.iter().map(|r| (r.root, r.mult as u32)).collect();
        Self::from_pairs(&pairs)
    }

    pub fn factors(&self) -> &[BlaschkeFactor] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|f| f.mult).sum()
    }

    /// True for the single factor `ζ` (exact zero, multiplicity one).
    pub fn is_identity(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].mult == 1 && self.factors[0].zero == Complex64::new(0.0, 0.0)
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        check_in_disc(z, "zeta")?;
        Ok(self.eval_unchecked(z))
    }

    pub(crate) fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        self.factors.iter().map(|f| f.eval(z)).product()
    }

    /// Matrix functional calculus; checks `A ∈ Ω_n` first.
    pub fn matrix(&self, a: &CMatrix) -> Result<CMatrix> {
        if !in_spectral_ball(a, 0.0)? {
            return Err(Error::invalid(format!(
                "matrix has spectral radius {} >= 1",
                spectral_radius(a)?
            )));
        }
        self.matrix_unchecked(a)
    }

    /// Product of `(I - conj(λ) A)^{-m} (A - λ I)^m`, each factor by an LU solve.
    pub(crate) fn matrix_unchecked(&self, a: &CMatrix) -> Result<CMatrix> {
        let n = a.n();
        let mut acc = CMatrix::identity(n);
        for f in &self.factors {
            let denom = &CMatrix::identity(n) - &a.scale(f.zero.conj());
            let lu = Lu::factor(&denom)
                .map_err(|_| Error::numerical(format!("I - conj({}) A is singular", f.zero), Some(a)))?;
            let single = lu.solve(&a.shift(f.zero));
            for _ in 0..f.mult {
                acc = acc.matmul(&single);
            }
        }
        if !acc.is_finite() {
            return Err(Error::numerical("non-finite Blaschke matrix", Some(a)));
        }
        Ok(acc)
    }
}

pub fn blaschke_eval(b: &BlaschkeProduct, z: Complex64) -> Result<Complex64> {
    b.eval(z)
}

pub fn blaschke_matrix(b: &BlaschkeProduct, a: &CMatrix) -> Result<CMatrix> {
    b.matrix(a)
}

/// Blaschke product whose zeros are the distinct eigenvalues of `A` with
/// minimal-polynomial multiplicities; it annihilates `A`.
pub fn minpoly_blaschke(a: &CMatrix) -> Result<BlaschkeProduct> {
    minpoly_blaschke_with(a, DEFAULT_MINPOLY_TOL)
}

pub fn minpoly_blaschke_with(a: &CMatrix, tol: f64) -> Result<BlaschkeProduct> {
    if !in_spectral_ball(a, 0.0)? {
        return Err(Error::invalid("minpoly Blaschke product needs spectral radius < 1"));
    }
    BlaschkeProduct::from_minpoly(&minimal_polynomial(a, tol)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn scalar_examples() {
        let sq = BlaschkeProduct::from_pairs(&[(c(0.0, 0.0), 2)]).unwrap();
        assert_eq!(sq.eval(c(0.5, 0.0)).unwrap(), c(0.25, 0.0));
        let lam = c(0.3, 0.4);
        assert_eq!(BlaschkeProduct::from_pairs(&[(lam, 1)]).unwrap().eval(lam).unwrap(), c(0.0, 0.0));
        let b = BlaschkeProduct::from_pairs(&[(c(0.2, 0.0), 1), (c(-0.3, 0.0), 1)]).unwrap();
        assert!((b.eval(c(0.0, 0.0)).unwrap() - c(-0.06, 0.0)).norm() < 1e-16);
        assert!(b.eval(c(1.0, 0.0)).is_err());
    }

    #[test]
    fn invalid_products() {
        assert!(BlaschkeProduct::from_pairs(&[]).is_err());
        assert!(BlaschkeProduct::from_pairs(&[(c(1.0, 0.0), 1)]).is_err());
        assert!(BlaschkeProduct::from_pairs(&[(c(0.1, 0.0), 0)]).is_err());
    }

    #[test]
    fn matrix_examples() {
        let a = CMatrix::from_real_rows(&[&[0.3, 0.5], &[-0.1, 0.2]]);
        let id = BlaschkeProduct::identity().matrix(&a).unwrap();
        assert!((&id - &a).max_abs() < 1e-15);

        let d = CMatrix::from_diag(&[c(0.5, 0.0), c(0.0, 0.0)]);
        let b = BlaschkeProduct::from_pairs(&[(c(0.2, 0.0), 1)]).unwrap();
        let out = b.matrix(&d).unwrap();
        let want = CMatrix::from_diag(&[c(1.0 / 3.0, 0.0), c(-0.2, 0.0)]);
        assert!((&out - &want).max_abs() < 1e-15);

        assert!(b.matrix(&CMatrix::identity(2)).is_err());
    }

    #[test]
    fn minpoly_products() {
        let z = minpoly_blaschke(&CMatrix::zeros(3)).unwrap();
        assert!(z.is_identity());

        let j3 = CMatrix::from_fn(3, |i, j| if i == j + 1 { c(1.0, 0.0) } else { c(0.0, 0.0) });
        let b = minpoly_blaschke(&j3).unwrap();
        assert_eq!(b.factors().len(), 1);
        assert_eq!(b.factors()[0].mult, 3);
        assert!(b.factors()[0].zero.norm() < 1e-12);
        assert!(b.matrix(&j3).unwrap().max_abs() < 1e-12);

        let d = CMatrix::from_diag(&[c(0.5, 0.0), c(0.5, 0.0), c(0.2, 0.0)]);
        let b = minpoly_blaschke(&d).unwrap();
        assert_eq!(b.degree(), 2);
        assert!(b.matrix(&d).unwrap().max_abs() < 1e-14);
    }

    #[test]
    fn json_shape() {
        let b = BlaschkeProduct::from_pairs(&[(c(0.5, -0.25), 2)]).unwrap();
        let s = serde_json::to_string(&b).unwrap();
        assert_eq!(s, r#"{"factors":[{"re":0.5,"im":-0.25,"mult":2}]}"#);
        assert_eq!(serde_json::from_str::<BlaschkeProduct>(&s).unwrap(), b);
        assert!(serde_json::from_str::<BlaschkeProduct>(r#"{"factors":[]}"#).is_err());
    }
}
