//! Dense complex matrices, eigenvalues, singular values and linear solves.

mod eigen;
mod lu;
mod matrix;
pub mod svd;

pub use eigen::{eig_tolerance, eigenvalues, in_spectral_ball, spectral_radius, EigList, EIG_TOL_CONSTANT};
pub use lu::{inverse, solve, Lu};
pub use matrix::{CMatrix, MatrixLiteral};
