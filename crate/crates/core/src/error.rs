use crate::linalg::CMatrix;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("numerical failure: {reason}")]
    NumericalFailure {
        reason: String,
        matrix: Option<Box<CMatrix>>,
    },

    /// A singular value sits inside the ambiguity band around the rank
    /// threshold, so the Jordan structure cannot be read off reliably.
    #[error(
        "ill-conditioned Jordan structure: singular value {sigma:e} within band \
         [{lower:e}, {upper:e}] of the rank threshold; supply exact-structure input"
    )]
    IllConditionedStructure { sigma: f64, lower: f64, upper: f64 },

    #[error("Mobius image of the unit circle is unbounded (|c| = |d|)")]
    UnboundedImage,

    #[error("degenerate point pair: z = w = {0}")]
    DegeneratePair(num_complex::Complex64),

    #[error("generator violation at {path}: spectral radius {radius} is not < 1")]
    GeneratorViolation { path: String, radius: f64 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn numerical(reason: impl Into<String>, matrix: Option<&CMatrix>) -> Self {
        Error::NumericalFailure {
            reason: reason.into(),
            matrix: matrix.map(|m| Box::new(m.clone())),
        }
    }

    pub fn is_generator_violation(&self) -> bool {
        matches!(self, Error::GeneratorViolation { .. })
    }

    /// Samples that land on an ill-posed Jordan structure are skipped by the
    /// campaigns rather than counted as failures.
    pub fn is_ambiguous_structure(&self) -> bool {
        matches!(self, Error::IllConditionedStructure { .. })
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
