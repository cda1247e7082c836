use thiserror::Error;

/// Every failure the library can report.
///
/// Each variant maps to a stable machine-readable code through [`Error::code`];
/// the command-line front end prints that code verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid metric eigenvalues: {0}")]
    InvalidEigenvalues(String),
    #[error("invalid Christoffel triple: {0}")]
    InvalidChristoffel(String),
    #[error("invalid heat invariants: {0}")]
    InvalidHeatInvariants(String),
    #[error("cubic has complex roots (discriminant {discriminant:e})")]
    ComplexRoots { discriminant: f64 },
    #[error("no real metric: discriminant B^2+4AC = {discriminant:e} is negative")]
    NegativeDiscriminant { discriminant: f64 },
    #[error("no common root of q1 and q2 (residuals {residuals:?})")]
    NoCommonRoot { residuals: [f64; 2] },
    #[error("existence condition violated: {0}")]
    ExistenceViolated(String),
    #[error("inconsistent curvature data: {0}")]
    InconsistentCurvature(String),
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("not realizable: {0}")]
    NotRealizable(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidEigenvalues(_) => "INVALID_EIGENVALUES",
            Error::InvalidChristoffel(_) => "INVALID_CHRISTOFFEL",
            Error::InvalidHeatInvariants(_) => "INVALID_HEAT_INVARIANTS",
            Error::ComplexRoots { .. } => "COMPLEX_ROOTS",
            Error::NegativeDiscriminant { .. } => "NEGATIVE_DISCRIMINANT",
            Error::NoCommonRoot { .. } => "NO_COMMON_ROOT",
            Error::ExistenceViolated(_) => "EXISTENCE_VIOLATED",
            Error::InconsistentCurvature(_) => "INCONSISTENT_CURVATURE",
            Error::BadParameters(_) => "BAD_PARAMETERS",
            Error::NotRealizable(_) => "NOT_REALIZABLE",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
