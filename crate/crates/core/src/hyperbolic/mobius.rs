use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `T(z) = (a z + b) / (c z + d)` with `ad - bc ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Mobius {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Complex64,
    pub radius: f64,
}

impl Mobius {
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        let det = a * d - b * c;
        if det.norm() == 0.0 || !det.re.is_finite() || !det.im.is_finite() {
            return Err(Error::invalid("degenerate Mobius transformation (ad - bc = 0)"));
        }
        Ok(Mobius { a, b, c, d })
    }

    /// Disc automorphism `(z - λ) / (1 - conj(λ) z)`.
    pub fn disc_automorphism(lambda: Complex64) -> Result<Self> {
        super::disc::check_in_disc(lambda, "lambda")?;
        Self::new(Complex64::new(1.0, 0.0), -lambda, -lambda.conj(), Complex64::new(1.0, 0.0))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    pub fn image_circle(&self) -> Result<Circle> {
        let gap = self.d.norm_sqr() - self.c.norm_sqr();
        if gap == 0.0 {
            return Err(Error::UnboundedImage);
        }
        let center = (self.b * self.d.conj() - self.a * self.c.conj()) / gap;
        let radius = (self.a * self.d - self.b * self.c).norm() / gap.abs();
        Ok(Circle { center, radius })
    }

    /// `min |w|` over the image of the unit circle: `| |center| - radius |`.
    /// When the circle encloses 0 the nearest point is on the far side of the
    /// centre, which the same absolute value covers.
    pub fn circle_min_modulus(&self) -> Result<f64> {
        let circ = self.image_circle()?;
        Ok((circ.center.norm() - circ.radius).abs())
    }
}

pub fn mobius_image_circle(t: &Mobius) -> Result<Circle> {
    t.image_circle()
}

pub fn circle_min_modulus(t: &Mobius) -> Result<f64> {
    t.circle_min_modulus()
}
