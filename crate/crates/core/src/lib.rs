pub mod bounds;
pub mod campaign;
pub mod error;
pub mod extremal;
pub mod hyperbolic;
pub mod linalg;
pub mod maps;
pub mod spectrum;

pub use error::{Error, Result};
pub use linalg::CMatrix;
pub use num_complex::Complex64;
