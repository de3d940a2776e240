use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// Input outside the admissible domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The gamma function was evaluated at a non-positive integer.
    #[error("gamma pole at z = {at}")]
    GammaPole { at: f64 },

    /// A coefficient matrix could not be inverted.
    #[error("singular coefficient matrix (zero determinant)")]
    SingularMatrix,

    /// F12 = 0: the incident/reflected basis is degenerate and transmission
    /// amplitudes are not defined by 1/F12.
    #[error("degenerate evolution matrix: F12 = 0")]
    DegenerateNoReflection,

    /// A conservation-law property of the evolution matrix failed its tolerance.
    #[error("evolution matrix property violation: {0}")]
    PropertyViolation(String),

    /// The numerical solver could not reach the requested quality.
    #[error("precision failure: {0}")]
    Precision(String),

    /// Invalid solver configuration.
    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable machine-readable tag for structured error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::GammaPole { .. } => "gamma_pole",
            Error::SingularMatrix => "singular_matrix",
            Error::DegenerateNoReflection => "degenerate_no_reflection",
            Error::PropertyViolation(_) => "property_violation",
            Error::Precision(_) => "precision",
            Error::Config(_) => "config",
        }
    }
}
