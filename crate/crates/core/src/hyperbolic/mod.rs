//! Scalar hyperbolic machinery on the unit disc and its matrix lift.

mod blaschke;
pub(crate) mod disc;
mod mobius;

pub use blaschke::{blaschke_eval, blaschke_matrix, minpoly_blaschke, minpoly_blaschke_with, BlaschkeFactor, BlaschkeProduct};
pub use disc::{dist_m, pseudo_hyperbolic};
pub use mobius::{circle_min_modulus, mobius_image_circle, Circle, Mobius};
