use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("pole of {func} at {at}")]
    Pole { func: &'static str, at: String },
    #[error("singular dynamical parameter: {0}")]
    SingularDynamical(String),
    #[error("singular spectral parameter: {0}")]
    SingularSpectral(String),
    #[error("{what} did not converge after {steps} steps")]
    NoConvergence { what: &'static str, steps: usize },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("outside domain: {0}")]
    Domain(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("zero patterns differ at ({0}, {1})")]
    ZeroPattern(usize, usize),
    #[error("ratio spread {spread:e} exceeds {tol:e}")]
    NotProportional { spread: f64, tol: f64 },
    #[error("unknown family: {0}")]
    UnknownFamily(String),
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("weight table search: {0}")]
    Search(String),
}

impl Error {
    pub(crate) fn pole(func: &'static str, at: impl std::fmt::Display) -> Self {
        Error::Pole {
            func,
            at: at.to_string(),
        }
    }

    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Pole { .. } => "pole",
            Error::SingularDynamical(_) => "singular_dynamical",
            Error::SingularSpectral(_) => "singular_spectral",
            Error::NoConvergence { .. } => "no_convergence",
            Error::Dimension(_) => "dimension",
            Error::Domain(_) => "domain",
            Error::SingularMatrix => "singular_matrix",
            Error::ZeroPattern(..) => "zero_pattern",
            Error::NotProportional { .. } => "not_proportional",
            Error::UnknownFamily(_) => "unknown_family",
            Error::InvalidParam(_) => "invalid_param",
            Error::Search(_) => "search",
        }
    }

    /// Errors caused by the caller's parameters rather than by numerics.
    pub fn is_invalid_input(&self) -> bool {
        matches!(
            self,
            Error::Pole { .. }
                | Error::SingularDynamical(_)
                | Error::SingularSpectral(_)
                | Error::Domain(_)
                | Error::UnknownFamily(_)
                | Error::InvalidParam(_)
                | Error::Dimension(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
