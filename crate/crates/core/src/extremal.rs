//! Explicit extremal constructions: shift/companion blocks, the sharpness
//! maps for both bounds, the scalar-spectrum locus `𝔖_n`, and the failure of
//! the naive growth bound.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bounds::{check_theorem2_with, theorem1_terms, CheckOptions, SlackReport};
use crate::error::{Error, Result};
use crate::hyperbolic::disc::check_in_disc;
use crate::hyperbolic::pseudo_hyperbolic;
use crate::linalg::CMatrix;
use crate::maps::sampling::{complex_gaussian, disc_point, random_similarity, trial_rng};
use crate::maps::{DiscMapSpec, SelfMapSpec};
use crate::spectrum::{analyze, MinPoly, MinPolyRoot};

/// Jordan data carried by a [`StructuredMatrix`]. The facts it implies
/// (spectrum, minimal polynomial) are similarity invariant, so a tag stays
/// valid for a conjugated matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StructureTag {
    /// Nilpotent of degree `d`.
    Nilpotent { d: usize },
    /// `N_d(w)`: eigenvalues are the `d`-th roots of `w`.
    Companion { d: usize, w: Complex64 },
    BlockDiag { blocks: Vec<StructureTag> },
    /// `λ I + N` with `N` nilpotent of degree `index`.
    ScalarPlusNilpotent { lambda: Complex64, index: usize },
}

impl StructureTag {
    /// Minimal polynomial implied by the tag.
    pub fn known_minpoly(&self) -> MinPoly {
        let mut roots: Vec<MinPolyRoot> = Vec::new();
        self.collect_roots(&mut roots);
        MinPoly::from_roots(roots)
    }

    fn collect_roots(&self, out: &mut Vec<MinPolyRoot>) {
        let mut push = |root: Complex64, mult: usize| {
            match out.iter_mut().find(|r| (r.root - root).norm() <= 1e-12) {
                Some(r) => r.mult = r.mult.max(mult),
                None => out.push(MinPolyRoot { root, mult }),
            }
        };
        match self {
            StructureTag::Nilpotent { d } => push(Complex64::new(0.0, 0.0), *d),
            StructureTag::Companion { d, w } => {
                if *w == Complex64::new(0.0, 0.0) {
                    push(*w, *d);
                } else {
                    let (r, arg) = w.to_polar();
                    let rd = r.powf(1.0 / *d as f64);
                    for k in 0..*d {
                        let phi = (arg + std::f64::consts::TAU * k as f64) / *d as f64;
                        push(Complex64::from_polar(rd, phi), 1);
                    }
                }
            }
            StructureTag::ScalarPlusNilpotent { lambda, index } => push(*lambda, *index),
            StructureTag::BlockDiag { blocks } => {
                for b in blocks {
                    b.collect_roots(out);
                }
            }
        }
    }

    pub fn known_radius(&self) -> f64 {
        self.known_minpoly().roots.iter().map(|r| r.root.norm()).fold(0.0, f64::max)
    }
}

/// A matrix annotated with its Jordan data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructuredMatrix {
    pub matrix: CMatrix,
    pub tag: StructureTag,
}

/// `N_d(c)`: ones on the subdiagonal, `c` in the top-right corner
/// (`[c]` when `d = 1`).
pub fn shift_block(d: usize, c: Complex64) -> CMatrix {
    let mut m = CMatrix::from_fn(d, |i, j| if i == j + 1 { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) });
    m[(0, d - 1)] += c;
    m
}

/// `N_d(c) ⊕ c I_{n-d}`, the common shape of every extremal map here.
pub fn extremal_block(n: usize, d: usize, c: Complex64) -> CMatrix {
    if d == n {
        return shift_block(d, c);
    }
    CMatrix::block_diag(&[&shift_block(d, c), &CMatrix::scalar(n - d, c)])
}

pub fn companion_nd(d: usize, w: Complex64) -> Result<StructuredMatrix> {
    if d == 0 {
        return Err(Error::invalid("block size must be at least 1"));
    }
    check_in_disc(w, "w")?;
    let tag = if w == Complex64::new(0.0, 0.0) { StructureTag::Nilpotent { d } } else { StructureTag::Companion { d, w } };
    Ok(StructuredMatrix { matrix: shift_block(d, w), tag })
}

/// `F_d(ζ) = N_d(ζ) ⊕ ζ I_{n-d}` with spectral radius `|ζ|^{1/d}`.
pub fn example_fd(n: usize, d: usize, zeta: Complex64) -> Result<StructuredMatrix> {
    if n < 3 || d < 2 || d > n - 1 {
        return Err(Error::invalid(format!("need n >= 3 and 2 <= d <= n - 1, got n = {n}, d = {d}")));
    }
    check_in_disc(zeta, "zeta")?;
    let head = if zeta == Complex64::new(0.0, 0.0) { StructureTag::Nilpotent { d } } else { StructureTag::Companion { d, w: zeta } };
    Ok(StructuredMatrix {
        matrix: extremal_block(n, d, zeta),
        tag: StructureTag::BlockDiag {
            blocks: vec![head, StructureTag::ScalarPlusNilpotent { lambda: zeta, index: 1 }],
        },
    })
}

fn check_nd(n: usize, d: usize) -> Result<()> {
    if n < 2 || d == 0 || d > n {
        return Err(Error::invalid(format!("need n >= 2 and 1 <= d <= n, got n = {n}, d = {d}")));
    }
    Ok(())
}

/// Disc map attaining equality in the two-point bound at `(z, w)`.
pub fn extremal_disc_map(z: Complex64, w: Complex64, n: usize, d: usize) -> Result<DiscMapSpec> {
    check_nd(n, d)?;
    check_in_disc(z, "z")?;
    check_in_disc(w, "w")?;
    if z == w {
        return Err(Error::DegeneratePair(z));
    }
    Ok(DiscMapSpec::Extremal { z, w, n, d })
}

/// `X ↦ N_d(tr X / n) ⊕ (tr X / n) I_{n-d}`.
pub fn extremal_self_map(n: usize, d: usize) -> Result<SelfMapSpec> {
    check_nd(n, d)?;
    SelfMapSpec::extremal(n, d)
}

/// Equality check of the two-point bound for [`extremal_disc_map`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscSharpness {
    /// Equality report: passes iff `|slack| ≤ tol`.
    pub report: SlackReport,
    pub d_z: usize,
    pub d_w: usize,
    /// `max_{λ∈σ(F(z))} dist(λ, σ(F(w)))^{d(w)}`
    pub secondary: f64,
    /// `M(z, w)^{d+1}`
    pub expected_secondary: f64,
    /// Whether `secondary = expected_secondary` is claimed: needs `n > d ≥ 2`
    /// and the `d`-th roots of `m(w)` numerically distinct from `m(w)`,
    /// observed as `d(w) = d + 1`.
    pub secondary_applies: bool,
}

pub fn disc_sharpness(z: Complex64, w: Complex64, n: usize, d: usize, opts: &CheckOptions) -> Result<DiscSharpness> {
    let f = extremal_disc_map(z, w, n, d)?;
    let rho = pseudo_hyperbolic(z, w)?;
    let t = theorem1_terms(&f.eval(z)?, &f.eval(w)?, opts.minpoly_tol)?;
    let expected_secondary = rho.powi(d as i32 + 1);
    let secondary_applies = n > d && d >= 2 && t.d2 == d + 1;
    let report = SlackReport::equality(t.lhs, rho, opts.tol_check)
        .with("z", z)
        .with("w", w)
        .with("n", n)
        .with("d", d)
        .with("d_z", t.d1)
        .with("d_w", t.d2);
    Ok(DiscSharpness { report, d_z: t.d1, d_w: t.d2, secondary: t.backward, expected_secondary, secondary_applies })
}

/// Equality check of the growth bound for `𝔊^{(d)}` at `a ∈ 𝔖_n`; the
/// context records the observed `d_G`.
pub fn self_sharpness(a: &CMatrix, d: usize, opts: &CheckOptions) -> Result<SlackReport> {
    let g = extremal_self_map(a.n(), d)?;
    let r = check_theorem2_with(&g, a, opts)?;
    let mut out = SlackReport::equality(r.lhs, r.rhs, opts.tol_check);
    out.context = r.context;
    out.insert("d", d);
    Ok(out)
}

/// Element of `𝔖_n`: `S (λ I + U) S⁻¹` with `U` strictly upper triangular
/// Gaussian, `|λ|` uniform on `[0, 0.95]` and `cond(S) ≤ 100`.
pub fn sample_sn(n: usize, seed: u64) -> Result<CMatrix> {
    sample_sn_with(n, &mut trial_rng(seed, 0))
}

pub fn sample_sn_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<CMatrix> {
    if n < 2 {
        return Err(Error::invalid("n must be at least 2"));
    }
    let lambda = Complex64::from_polar(0.95 * rng.random::<f64>(), std::f64::consts::TAU * rng.random::<f64>());
    let mut t = CMatrix::scalar(n, lambda);
    for i in 0..n {
        for j in (i + 1)..n {
            t[(i, j)] = complex_gaussian(rng) * 0.5;
        }
    }
    let (s, s_inv) = random_similarity(n, 100.0, rng);
    Ok(s.matmul(&t).matmul(&s_inv))
}

/// Membership in `𝔖_n`: a single clustered eigenvalue, inside the disc.
pub fn is_in_sn(a: &CMatrix, tol: f64) -> Result<bool> {
    let s = analyze(a, tol)?;
    Ok(s.spectrum.points.len() == 1 && s.radius() < 1.0)
}

/// Random matrix with prescribed Jordan data, conjugated by a similarity
/// of condition at most 10. Eigenvalues are at least 0.2 apart.
pub fn sample_jordan_matrix<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<StructuredMatrix> {
    if n == 0 {
        return Err(Error::invalid("dimension must be positive"));
    }
    let k = rng.random_range(1..=n.min(3));
    let mut eigs: Vec<Complex64> = Vec::with_capacity(k);
    while eigs.len() < k {
        let z = disc_point(0.9, rng);
        if eigs.iter().all(|e| (e - z).norm() >= 0.2) {
            eigs.push(z);
        }
    }
    // Random composition of n into Jordan blocks, each tied to an eigenvalue;
    // the first k blocks cover every eigenvalue once.
    let mut sizes: Vec<usize> = Vec::new();
    let mut left = n;
    while left > 0 {
        let s = rng.random_range(1..=left);
        sizes.push(s);
        left -= s;
    }
    let mut blocks: Vec<CMatrix> = Vec::new();
    let mut tags: Vec<StructureTag> = Vec::new();
    for (i, &s) in sizes.iter().enumerate() {
        let lambda = if i < k { eigs[i] } else { eigs[rng.random_range(0..k)] };
        blocks.push(&shift_block(s, Complex64::new(0.0, 0.0)) + &CMatrix::scalar(s, lambda));
        tags.push(StructureTag::ScalarPlusNilpotent { lambda, index: s });
    }
    let refs: Vec<&CMatrix> = blocks.iter().collect();
    let j = CMatrix::block_diag(&refs);
    let (s, s_inv) = random_similarity(n, 10.0, rng);
    Ok(StructuredMatrix { matrix: s.matmul(&j).matmul(&s_inv), tag: StructureTag::BlockDiag { blocks: tags } })
}

/// Failure of the naive bound `r(G(X)) ≤ r(X)` for a map with nilpotent
/// (not zero) value at the origin, next to the growth bound that holds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NaiveCounterexample {
    pub map: SelfMapSpec,
    pub x: CMatrix,
    pub naive: SlackReport,
    pub theorem2: SlackReport,
}

/// `G = 𝔊^{(2)}`, `X = 0.01 I_n`.
pub fn naive_bound_counterexample(n: usize) -> Result<NaiveCounterexample> {
    naive_bound_counterexample_at(n, 0.01, &CheckOptions::default())
}

pub fn naive_bound_counterexample_at(n: usize, t: f64, opts: &CheckOptions) -> Result<NaiveCounterexample> {
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::invalid(format!("t = {t} is not in (0, 1)")));
    }
    let map = extremal_self_map(n, 2)?;
    let x = CMatrix::scalar(n, Complex64::new(t, 0.0));
    let theorem2 = check_theorem2_with(&map, &x, opts)?;
    let r_x = analyze(&x, opts.minpoly_tol)?.radius();
    let naive = SlackReport::new(theorem2.lhs, r_x, opts.tol_check).with("t", t).with("n", n);
    Ok(NaiveCounterexample { map, x, naive, theorem2 })
}

/// One row of the key-example table: radius of `F_d(ζ)` against
/// `|ζ|^{1/d}`, and the powers `r^q`, `q < d`, that exceed `M(0, ζ) = |ζ|`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct KeyExampleRow {
    pub n: usize,
    pub d: usize,
    pub zeta: Complex64,
    pub radius: f64,
    pub expected: f64,
    pub abs_error: f64,
    /// `r^q` for `q = 1, …, d-1`.
    pub powers: Vec<f64>,
    /// Every power strictly above `|ζ|` (vacuous at `ζ = 0`).
    pub powers_exceed: bool,
}

/// Origin plus five moduli on four rays.
pub fn key_example_grid() -> Vec<Complex64> {
    let mut pts = vec![Complex64::new(0.0, 0.0)];
    for r in [0.1, 0.25, 0.5, 0.75, 0.9] {
        for k in 0..4 {
            pts.push(Complex64::from_polar(r, 0.3 + k as f64 * std::f64::consts::FRAC_PI_2));
        }
    }
    pts
}

/// Table over `n ∈ ns`, `2 ≤ d ≤ n-1`, `ζ ∈ grid`.
pub fn key_example_table(ns: &[usize], grid: &[Complex64], minpoly_tol: f64) -> Result<Vec<KeyExampleRow>> {
    let mut rows = Vec::new();
    for &n in ns {
        for d in 2..n {
            for &zeta in grid {
                let radius = analyze(&example_fd(n, d, zeta)?.matrix, minpoly_tol)?.radius();
                let expected = zeta.norm().powf(1.0 / d as f64);
                let powers: Vec<f64> = (1..d).map(|q| radius.powi(q as i32)).collect();
                let powers_exceed = zeta.norm() == 0.0 || powers.iter().all(|&p| p > zeta.norm());
                rows.push(KeyExampleRow { n, d, zeta, radius, expected, abs_error: (radius - expected).abs(), powers, powers_exceed });
            }
        }
    }
    Ok(rows)
}
