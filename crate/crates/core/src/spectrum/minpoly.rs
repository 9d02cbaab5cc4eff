use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::cluster::{mean, SpectralPoint, Spectrum};
use crate::error::{Error, Result};
use crate::linalg::{eigenvalues, svd, CMatrix};

/// Default relative rank tolerance for the structure probe.
pub const DEFAULT_MINPOLY_TOL: f64 = 1e-8;

/// Matrices whose largest singular value is at most this are treated as the
/// zero matrix. Compositions that annihilate a matrix analytically leave
/// round-off of this order, and its "structure" is noise.
pub const ZERO_FLOOR: f64 = 1e-12;

/// Ratio between the rank threshold and the edges of the ambiguity band.
const BAND_FACTOR: f64 = 10.0;

/// A root of the minimal polynomial with its multiplicity `m_j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "RootLiteral", into = "RootLiteral")]
pub struct MinPolyRoot {
    pub root: Complex64,
    pub mult: usize,
}

#[derive(Serialize, Deserialize)]
struct RootLiteral {
    re: f64,
    im: f64,
    mult: usize,
}

impl From<RootLiteral> for MinPolyRoot {
    fn from(l: RootLiteral) -> Self {
        MinPolyRoot {
            root: Complex64::new(l.re, l.im),
            mult: l.mult,
        }
    }
}

impl From<MinPolyRoot> for RootLiteral {
    fn from(r: MinPolyRoot) -> Self {
        RootLiteral {
            re: r.root.re,
            im: r.root.im,
            mult: r.mult,
        }
    }
}

/// Minimal polynomial `∏ (λ - λ_j)^{m_j}` in factored form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinPoly {
    pub roots: Vec<MinPolyRoot>,
    pub degree: usize,
}

impl MinPoly {
    pub fn from_roots(roots: Vec<MinPolyRoot>) -> Self {
        let degree = roots.iter().map(|r| r.mult).sum();
        MinPoly { roots, degree }
    }

    /// `∏ (A - λ_j I)^{m_j}`
    pub fn eval_matrix(&self, a: &CMatrix) -> CMatrix {
        let mut acc = CMatrix::identity(a.n());
        for r in &self.roots {
            let f = a.shift(r.root);
            for _ in 0..r.mult {
                acc = acc.matmul(&f);
            }
        }
        acc
    }
}

/// Frobenius norm of the minimal polynomial evaluated at `A`.
pub fn annihilation_norm(a: &CMatrix, p: &MinPoly) -> f64 {
    p.eval_matrix(a).frobenius_norm()
}

/// Nullity increments `ν_k = dim ker B^k − dim ker B^{k−1}` of a staircase
/// reduction, plus the first singular value that fell inside the ambiguity
/// band, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct Staircase {
    pub increments: Vec<usize>,
    pub band_hit: Option<f64>,
}

impl Staircase {
    /// `dim ker B^n`, the algebraic multiplicity of 0 as an eigenvalue of `B`.
    pub fn algebraic_multiplicity(&self) -> usize {
        self.increments.iter().sum()
    }

    /// Smallest `k` with `rank B^k = rank B^{k+1}`.
    pub fn index(&self) -> usize {
        self.increments.len()
    }
}

/// Staircase reduction of `B`: with `B V = [W_r | ~0]` from an SVD, `V* B V`
/// is block lower triangular with zero trailing columns and
/// `dim ker B^{k+1} = ν + dim ker W_11^k`, so recursing on the leading block
/// produces the nullity sequence of the powers of `B` using only
/// first-power singular values.
pub fn staircase(b: &CMatrix, threshold: f64) -> Staircase {
    let lower = threshold / BAND_FACTOR;
    let upper = threshold * BAND_FACTOR;
    let mut increments = Vec::new();
    let mut band_hit = None;
    let mut cur = b.clone();
    loop {
        let m = cur.n();
        let s = svd::svd(&cur);
        if band_hit.is_none() {
            band_hit = s.sigma.iter().copied().find(|&x| x > lower && x < upper);
        }
        let nu = s.sigma.iter().filter(|&&x| x <= threshold).count();
        if nu == 0 {
            break;
        }
        increments.push(nu);
        if nu == m {
            break;
        }
        let w = s.v.conj_transpose().matmul(&s.av);
        let k = m - nu;
        cur = CMatrix::from_fn(k, |i, j| w[(i, j)]);
    }
    Staircase { increments, band_hit }
}

/// Jordan-aware spectral data of a matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralStructure {
    pub spectrum: Spectrum,
    pub minpoly: MinPoly,
    /// Absolute rank threshold `tol · σ_max(A)` used for every decision.
    pub threshold: f64,
    /// A singular value that fell inside the ambiguity band.
    pub ambiguity: Option<f64>,
}

impl SpectralStructure {
    pub fn radius(&self) -> f64 {
        self.spectrum.radius()
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree
    }

    pub fn ambiguity_error(&self) -> Option<Error> {
        self.ambiguity.map(|sigma| Error::IllConditionedStructure {
            sigma,
            lower: self.threshold / BAND_FACTOR,
            upper: self.threshold * BAND_FACTOR,
        })
    }
}

struct Node {
    members: Vec<usize>,
    children: Option<(usize, usize)>,
}

/// Single-linkage dendrogram; the last node is the root.
fn dendrogram(values: &[Complex64]) -> Vec<Node> {
    let n = values.len();
    let mut nodes: Vec<Node> = (0..n)
        .map(|i| Node {
            members: vec![i],
            children: None,
        })
        .collect();
    let mut edges: Vec<(f64, usize, usize)> = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            edges.push(((values[i] - values[j]).norm(), i, j));
        }
    }
    edges.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    // owner[i] = current top node containing leaf i
    let mut owner: Vec<usize> = (0..n).collect();
    for (_, i, j) in edges {
        let (a, b) = (owner[i], owner[j]);
        if a == b {
            continue;
        }
        let mut members = nodes[a].members.clone();
        members.extend_from_slice(&nodes[b].members);
        members.sort_unstable();
        let id = nodes.len();
        for &m in &members {
            owner[m] = id;
        }
        nodes.push(Node {
            members,
            children: Some((a, b)),
        });
        if nodes.len() == 2 * n - 1 {
            break;
        }
    }
    nodes
}

/// Clustered spectrum and minimal polynomial of `A` at relative tolerance
/// `tol`. Ambiguity is recorded, not raised.
pub fn analyze(a: &CMatrix, tol: f64) -> Result<SpectralStructure> {
    if !(tol > 0.0) {
        return Err(Error::invalid("minimal polynomial tolerance must be positive"));
    }
    let n = a.n();
    let scale = svd::singular_values(a)[0];
    if scale <= ZERO_FLOOR {
        return Ok(SpectralStructure {
            spectrum: Spectrum {
                points: vec![SpectralPoint {
                    value: Complex64::new(0.0, 0.0),
                    alg_mult: n,
                }],
            },
            minpoly: MinPoly::from_roots(vec![MinPolyRoot {
                root: Complex64::new(0.0, 0.0),
                mult: 1,
            }]),
            threshold: 0.0,
            ambiguity: None,
        });
    }
    let threshold = tol * scale;
    let eigs = eigenvalues(a)?.values;
    let nodes = dendrogram(&eigs);

    // (first member, center, size, index)
    let mut accepted: Vec<(usize, Complex64, usize, usize)> = Vec::new();
    let mut ambiguity = None;
    let mut stack = vec![nodes.len() - 1];
    while let Some(id) = stack.pop() {
        let node = &nodes[id];
        let size = node.members.len();
        let center = mean(&eigs, &node.members);
        if size == 1 {
            accepted.push((node.members[0], center, 1, 1));
            continue;
        }
        let sc = staircase(&a.shift(center), threshold);
        if ambiguity.is_none() {
            ambiguity = sc.band_hit;
        }
        if sc.algebraic_multiplicity() >= size {
            accepted.push((node.members[0], center, size, sc.index().clamp(1, size)));
        } else if let Some((l, r)) = node.children {
            stack.push(r);
            stack.push(l);
        }
    }
    accepted.sort_by_key(|t| t.0);

    let spectrum = Spectrum {
        points: accepted
            .iter()
            .map(|&(_, value, alg_mult, _)| SpectralPoint { value, alg_mult })
            .collect(),
    };
    let minpoly = MinPoly::from_roots(
        accepted
            .iter()
            .map(|&(_, root, _, mult)| MinPolyRoot { root, mult })
            .collect(),
    );
    Ok(SpectralStructure {
        spectrum,
        minpoly,
        threshold,
        ambiguity,
    })
}

/// Minimal polynomial via the rank probe; errors inside the ambiguity band.
pub fn minimal_polynomial(a: &CMatrix, tol: f64) -> Result<MinPoly> {
    let s = analyze(a, tol)?;
    match s.ambiguity_error() {
        Some(e) => Err(e),
        None => Ok(s.minpoly),
    }
}

/// Jordan-aware clustered spectrum (multiplicities sum to `n`).
pub fn jordan_spectrum(a: &CMatrix, tol: f64) -> Result<Spectrum> {
    Ok(analyze(a, tol)?.spectrum)
}

/// Spectral radius read from the clustered spectrum. Unlike the raw
/// eigenvalue maximum it is not inflated by the scatter of defective
/// eigenvalues.
pub fn jordan_radius(a: &CMatrix, tol: f64) -> Result<f64> {
    Ok(analyze(a, tol)?.radius())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn shift_block(n: usize, corner: Complex64) -> CMatrix {
        let mut m = CMatrix::from_fn(n, |i, j| if i == j + 1 { c(1.0, 0.0) } else { c(0.0, 0.0) });
        if n > 1 {
            m[(0, n - 1)] = corner;
        } else {
            m[(0, 0)] = corner;
        }
        m
    }

    #[test]
    fn identity_has_linear_minpoly() {
        let p = minimal_polynomial(&CMatrix::identity(2), DEFAULT_MINPOLY_TOL).unwrap();
        assert_eq!(p.degree, 1);
        assert_eq!(p.roots.len(), 1);
        assert!((p.roots[0].root - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn nilpotent_jordan_block_has_cubic_minpoly() {
        let p = minimal_polynomial(&shift_block(3, c(0.0, 0.0)), DEFAULT_MINPOLY_TOL).unwrap();
        assert_eq!(p.degree, 3);
        assert_eq!(p.roots.len(), 1);
        assert_eq!(p.roots[0].mult, 3);
        assert!(p.roots[0].root.norm() < 1e-12);
    }

    #[test]
    fn semisimple_repeat_counts_once() {
        let a = CMatrix::from_diag(&[c(0.5, 0.0), c(0.5, 0.0), c(0.2, 0.0)]);
        let s = analyze(&a, DEFAULT_MINPOLY_TOL).unwrap();
        assert_eq!(s.minpoly.degree, 2);
        let mults: Vec<(f64, usize, usize)> = s
            .spectrum
            .points
            .iter()
            .zip(&s.minpoly.roots)
            .map(|(p, r)| (p.value.re, p.alg_mult, r.mult))
            .collect();
        assert_eq!(mults, vec![(0.5, 2, 1), (0.2, 1, 1)]);
    }

    #[test]
    fn companion_block_has_distinct_roots() {
        let a = shift_block(3, c(0.2, 0.0));
        let p = minimal_polynomial(&a, DEFAULT_MINPOLY_TOL).unwrap();
        assert_eq!(p.degree, 3);
        assert!(p.roots.iter().all(|r| r.mult == 1));
        for r in &p.roots {
            assert!((r.root.powu(3) - c(0.2, 0.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn mixed_jordan_structure() {
        // J_2(0.3) ⊕ J_1(0.3) ⊕ J_2(-0.4): minpoly (λ-0.3)^2 (λ+0.4)^2
        let mut a = CMatrix::zeros(5);
        for (i, v) in [0.3, 0.3, 0.3, -0.4, -0.4].into_iter().enumerate() {
            a[(i, i)] = c(v, 0.0);
        }
        a[(0, 1)] = c(1.0, 0.0);
        a[(3, 4)] = c(1.0, 0.0);
        let s = analyze(&a, DEFAULT_MINPOLY_TOL).unwrap();
        assert!(s.ambiguity.is_none());
        assert_eq!(s.minpoly.degree, 4);
        assert_eq!(s.spectrum.points.len(), 2);
        assert_eq!(s.spectrum.points[0].alg_mult, 3);
        assert_eq!(s.minpoly.roots[0].mult, 2);
        assert_eq!(s.minpoly.roots[1].mult, 2);
        assert!(annihilation_norm(&a, &s.minpoly) < 1e-12);
    }

    #[test]
    fn zero_matrix() {
        let s = analyze(&CMatrix::zeros(4), DEFAULT_MINPOLY_TOL).unwrap();
        assert_eq!(s.minpoly.degree, 1);
        assert_eq!(s.spectrum.points[0].alg_mult, 4);
        assert_eq!(s.radius(), 0.0);
    }

    #[test]
    fn ambiguous_structure_is_refused() {
        // Normal matrix with eigenvalues 0.5 and 0.5 + 2e-8: the separation
        // sits on the rank threshold.
        let a = CMatrix::from_diag(&[c(0.5, 0.0), c(0.5 + 2e-8, 0.0), c(0.1, 0.0)]);
        let err = minimal_polynomial(&a, DEFAULT_MINPOLY_TOL).unwrap_err();
        assert!(err.is_ambiguous_structure(), "{err:?}");
    }

    #[test]
    fn staircase_reads_weyr_characteristic() {
        // Nilpotent with blocks 3 and 1: ν = (2, 1, 1)
        let j3 = shift_block(3, c(0.0, 0.0));
        let z = CMatrix::zeros(1);
        let b = CMatrix::block_diag(&[&j3, &z]);
        let st = staircase(&b, 1e-8);
        assert_eq!(st.increments, vec![2, 1, 1]);
        assert_eq!(st.index(), 3);
        assert_eq!(st.algebraic_multiplicity(), 4);
    }

    #[test]
    fn minpoly_serialization_format() {
        let p = MinPoly::from_roots(vec![MinPolyRoot { root: c(0.5, -0.25), mult: 2 }]);
        assert_eq!(
            serde_json::to_string(&p).unwrap(),
            r#"{"roots":[{"re":0.5,"im":-0.25,"mult":2}],"degree":2}"#
        );
    }
}
