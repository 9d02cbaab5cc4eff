use num_complex::Complex64;

use crate::error::{Error, Result};

pub(crate) fn check_in_disc(z: Complex64, what: &str) -> Result<()> {
    if !(z.norm() < 1.0) {
        return Err(Error::invalid(format!("{what} = {z} is not in the open unit disc")));
    }
    Ok(())
}

/// Pseudo-hyperbolic distance `|z - w| / |1 - conj(w) z|` on the unit disc.
pub fn pseudo_hyperbolic(z: Complex64, w: Complex64) -> Result<f64> {
    check_in_disc(z, "z")?;
    check_in_disc(w, "w")?;
    Ok(rho(z, w))
}

#[inline]
pub(crate) fn rho(z: Complex64, w: Complex64) -> f64 {
    (z - w).norm() / (Complex64::new(1.0, 0.0) - w.conj() * z).norm()
}

/// Minimum pseudo-hyperbolic distance from `zeta` to the finite set `set`,
/// with the minimizing point. Ties go to the earliest point in `set`.
pub fn dist_m(zeta: Complex64, set: &[Complex64]) -> Result<(f64, Complex64)> {
    if set.is_empty() {
        return Err(Error::invalid("dist_M needs a non-empty set"));
    }
    check_in_disc(zeta, "zeta")?;
    let mut best = (f64::INFINITY, set[0]);
    for &p in set {
        check_in_disc(p, "set point")?;
        let d = rho(zeta, p);
        if d < best.0 {
            best = (d, p);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn distance_examples() {
        let w = c(0.3, -0.4);
        assert!((pseudo_hyperbolic(c(0.0, 0.0), w).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(pseudo_hyperbolic(w, w).unwrap(), 0.0);
        assert!((pseudo_hyperbolic(c(0.5, 0.0), c(-0.5, 0.0)).unwrap() - 0.8).abs() < 1e-15);
        let (a, b) = (c(0.1, 0.7), c(-0.6, 0.2));
        assert_eq!(pseudo_hyperbolic(a, b).unwrap(), pseudo_hyperbolic(b, a).unwrap());
    }

    #[test]
    fn outside_disc_rejected() {
        assert!(pseudo_hyperbolic(c(1.0, 0.0), c(0.0, 0.0)).is_err());
        assert!(pseudo_hyperbolic(c(0.0, 0.0), c(0.0, -2.0)).is_err());
    }

    #[test]
    fn set_distance() {
        assert_eq!(dist_m(c(0.5, 0.0), &[c(0.5, 0.0), c(0.0, 0.0)]).unwrap(), (0.0, c(0.5, 0.0)));
        let (d, p) = dist_m(c(0.0, 0.0), &[c(0.3, 0.0), c(0.0, 0.6)]).unwrap();
        assert!((d - 0.3).abs() < 1e-15);
        assert_eq!(p, c(0.3, 0.0));
        assert_eq!(dist_m(c(0.0, 0.0), &[c(0.0, 0.0)]).unwrap(), (0.0, c(0.0, 0.0)));
        // tie: both at modulus 0.4, first wins
        assert_eq!(dist_m(c(0.0, 0.0), &[c(0.0, 0.4), c(-0.4, 0.0)]).unwrap().1, c(0.0, 0.4));
        assert!(dist_m(c(0.0, 0.0), &[]).is_err());
    }
}
