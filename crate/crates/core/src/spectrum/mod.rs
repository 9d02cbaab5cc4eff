//! Clustered spectra and numerical minimal polynomials.
//!
//! Raw eigenvalues of a defective matrix scatter on a circle of radius
//! roughly `(ε‖A‖)^{1/k}` around the true value, `k` being the Jordan block
//! size, so a fixed clustering radius cannot recover multiplicities. The
//! structure-aware path ([`analyze`]) walks the single-linkage dendrogram of
//! the computed eigenvalues from the root down and accepts a cluster `C` with
//! mean `c` when the generalized eigenspace of `A` at `c` has numerical
//! dimension at least `|C|`. Dimensions and Jordan indices come from a
//! staircase reduction of `A - cI` (repeated SVD deflation), which yields the
//! rank sequence `rank (A - cI)^k` without forming powers.
//!
//! Every rank decision compares singular values against `tol · σ_max(A)`.
//! A singular value inside `[thr/10, 10·thr]` makes the structure ambiguous
//! and [`minimal_polynomial`] refuses to guess.

mod cluster;
mod krylov;
mod minpoly;

pub use cluster::{cluster_spectrum, SpectralPoint, Spectrum};
pub use krylov::{aberth_roots, krylov_minpoly_oracle, krylov_minpoly_oracle_with, KRYLOV_RESIDUAL_TOL};
pub use minpoly::{
    analyze, annihilation_norm, jordan_radius, jordan_spectrum, minimal_polynomial, staircase, MinPoly, MinPolyRoot,
    SpectralStructure, Staircase, DEFAULT_MINPOLY_TOL, ZERO_FLOOR,
};
