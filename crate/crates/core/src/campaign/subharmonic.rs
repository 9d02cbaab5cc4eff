use num_complex::Complex64;

use crate::bounds::SlackReport;
use crate::error::{Error, Result};
use crate::maps::DiscMapSpec;
use crate::spectrum::analyze;

/// Sample count for the circle averages.
pub const SAMPLES_PER_CIRCLE: usize = 720;

/// Quadrature allowance for the trapezoid rule at [`SAMPLES_PER_CIRCLE`].
pub const TOL_QUAD: f64 = 1e-6;

/// Trapezoid average of `r(F)` over the circle `ζ0 + ρ e^{iθ}`.
pub fn circle_average(f: &DiscMapSpec, zeta0: Complex64, rho: f64, samples: usize, minpoly_tol: f64) -> Result<f64> {
    let mut sum = 0.0;
    for k in 0..samples {
        let z = zeta0 + Complex64::from_polar(rho, std::f64::consts::TAU * k as f64 / samples as f64);
        sum += analyze(&f.eval(z)?, minpoly_tol)?.radius();
    }
    Ok(sum / samples as f64)
}

/// Sub-mean-value check of `ζ ↦ r(F(ζ))` on circles around `ζ0`: for each
/// radius, `slack = average - r(F(ζ0))`, passing iff `slack ≥ -tol_quad`.
pub fn subharmonicity_check(
    f: &DiscMapSpec,
    zeta0: Complex64,
    radii: &[f64],
    samples_per_circle: usize,
    tol_quad: f64,
    minpoly_tol: f64,
) -> Result<Vec<SlackReport>> {
    if samples_per_circle == 0 {
        return Err(Error::invalid("need at least one sample per circle"));
    }
    for &rho in radii {
        if !(rho > 0.0 && zeta0.norm() + rho < 1.0) {
            return Err(Error::invalid(format!("circle of radius {rho} around {zeta0} leaves the disc")));
        }
    }
    let center = analyze(&f.eval(zeta0)?, minpoly_tol)?.radius();
    radii
        .iter()
        .map(|&rho| {
            let avg = circle_average(f, zeta0, rho, samples_per_circle, minpoly_tol)?;
            Ok(SlackReport::new(center, avg, tol_quad)
                .with("zeta0", zeta0)
                .with("rho", rho)
                .with("samples", samples_per_circle))
        })
        .collect()
}
