use super::report::{CheckOptions, SlackReport, PRECONDITION_TOL};
use super::theorem1::{ball_structure, recheck};
use crate::error::{Error, Result};
use crate::hyperbolic::minpoly_blaschke_with;
use crate::linalg::CMatrix;
use crate::maps::SelfMapSpec;
use crate::spectrum::{analyze, DEFAULT_MINPOLY_TOL};
use num_complex::Complex64;

/// `(r_X^{1/d} + r_0) / (1 + r_0 r_X^{1/d})`.
pub fn theorem2_bound(r_x: f64, r_g0: f64, d_g: usize) -> Result<f64> {
    if !(0.0..1.0).contains(&r_x) || !(0.0..1.0).contains(&r_g0) {
        return Err(Error::invalid(format!("radii must lie in [0, 1), got {r_x}, {r_g0}")));
    }
    if d_g == 0 {
        return Err(Error::invalid("minimal-polynomial degree must be at least 1"));
    }
    let root = match d_g {
        1 => r_x,
        2 => r_x.sqrt(),
        3 => r_x.cbrt(),
        d => r_x.powf(1.0 / d as f64),
    };
    Ok((root + r_g0) / (1.0 + r_g0 * root))
}

pub fn check_theorem2(g: &SelfMapSpec, x: &CMatrix) -> Result<SlackReport> {
    check_theorem2_with(g, x, &CheckOptions::default())
}

pub fn check_theorem2_with(g: &SelfMapSpec, x: &CMatrix, opts: &CheckOptions) -> Result<SlackReport> {
    let gx = g.eval(x)?;
    let g0 = g.eval(&CMatrix::zeros(x.n()))?;
    let report = |o: &CheckOptions| -> Result<SlackReport> {
        let r_x = ball_structure_radius(x, o.minpoly_tol, "X")?;
        let lhs = ball_structure_radius(&gx, o.minpoly_tol, "G(X)")?;
        let s0 = ball_structure(&g0, o.minpoly_tol, "G(0)")?;
        let rhs = theorem2_bound(r_x, s0.radius(), s0.degree())?;
        Ok(SlackReport::new(lhs, rhs, o.tol_check)
            .with("r_x", r_x)
            .with("r_g0", s0.radius())
            .with("d_g", s0.degree())
            .with("x", x.digest())
            .with("g_x", gx.digest())
            .with("g_0", g0.digest()))
    };
    let first = report(opts)?;
    if first.pass {
        return Ok(first);
    }
    Ok(recheck(first, report(&opts.tightened())))
}

fn ball_structure_radius(a: &CMatrix, tol: f64, what: &str) -> Result<f64> {
    let r = analyze(a, tol)?.radius();
    if !(r < 1.0) {
        return Err(Error::invalid(format!("{what} has spectral radius {r} >= 1")));
    }
    Ok(r)
}

/// Origin-fixing special case: with `G(0) = 0`, `r(G(X)) ≤ r(X)`.
pub fn ransford_white_check(g: &SelfMapSpec, x: &CMatrix) -> Result<SlackReport> {
    ransford_white_check_with(g, x, &CheckOptions::default())
}

pub fn ransford_white_check_with(g: &SelfMapSpec, x: &CMatrix, opts: &CheckOptions) -> Result<SlackReport> {
    let g0 = g.eval(&CMatrix::zeros(x.n()))?;
    if g0.max_abs() > PRECONDITION_TOL {
        return Err(Error::Precondition(format!("G(0) is not zero (max entry {:e})", g0.max_abs())));
    }
    let gx = g.eval(x)?;
    let report = |o: &CheckOptions| -> Result<SlackReport> {
        let rhs = ball_structure_radius(x, o.minpoly_tol, "X")?;
        let lhs = ball_structure_radius(&gx, o.minpoly_tol, "G(X)")?;
        Ok(SlackReport::new(lhs, rhs, o.tol_check).with("x", x.digest()).with("g_x", gx.digest()))
    };
    let first = report(opts)?;
    if first.pass {
        return Ok(first);
    }
    Ok(recheck(first, report(&opts.tightened())))
}

/// `H = B_G ∘ G` with `B_G` the minimal-polynomial Blaschke product of
/// `G(0)`, so `H(0) = 0`. Needs the dimension because `G(0)` does.
pub fn pullback_to_origin(g: &SelfMapSpec, n: usize) -> Result<SelfMapSpec> {
    let g0 = g.eval(&CMatrix::zeros(n))?;
    let b = minpoly_blaschke_with(&g0, DEFAULT_MINPOLY_TOL)?;
    if b.is_identity() {
        return Ok(g.clone());
    }
    SelfMapSpec::compose(vec![g.clone(), SelfMapSpec::functional_calculus(b, Complex64::new(1.0, 0.0))?])
}
