use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Every failure mode surfaced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("degree {degree} exceeds reversal order {order}")]
    Degree { degree: usize, order: usize },

    #[error("root finder did not converge after {iterations} iterations (max residual {max_residual:.3e})")]
    Convergence {
        iterations: usize,
        max_residual: f64,
        residuals: Vec<f64>,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("polynomial has a zero at {root} outside the open unit disk")]
    NotSchurStable { root: Complex64 },

    #[error("inverse Szegő recursion broke down at degree {degree}: |alpha| = {modulus}")]
    Inversion { degree: usize, modulus: f64 },

    #[error("degenerate measure: {0}")]
    DegenerateMeasure(String),

    #[error("ill-conditioned input: {0}")]
    IllConditioned(String),

    #[error("not a Schur function: {0}")]
    NotSchur(String),

    #[error("evaluation point {0} is a pole")]
    Pole(Complex64),

    #[error("internal consistency check failed: {what} (deviation {deviation:.3e}, tolerance {tolerance:.1e})")]
    InternalConsistency {
        what: String,
        deviation: f64,
        tolerance: f64,
    },

    #[error("defect index is {rank}, expected 1")]
    NotDefectOne { rank: usize },

    #[error("matrix has an eigenvalue {eigenvalue} on the unit circle")]
    NotCompletelyNonUnitary { eigenvalue: Complex64 },

    #[error("matrix norm {norm} exceeds 1")]
    NotContraction { norm: f64 },

    #[error("solver failure: {0}")]
    Solver(String),

    #[error("the two POPUC parameters coincide (lambda = mu = {0})")]
    DegenerateParameters(Complex64),

    #[error("configuration is not realizable: {0}")]
    NotRealizable(String),

    #[error("product condition violated: prod y = {prod_second}, -prod w = {neg_prod_first}")]
    ProductCondition {
        prod_second: Complex64,
        neg_prod_first: Complex64,
    },

    #[error("triangle is degenerate (collinear vertices)")]
    DegenerateTriangle,

    #[error("geometry failure: {0}")]
    Geometry(String),
}

impl Error {
    /// `true` for errors caused by the caller's data rather than by a numerical
    /// routine failing on admissible data.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Degree { .. }
                | Error::InvalidInput(_)
                | Error::NotSchurStable { .. }
                | Error::DegenerateMeasure(_)
                | Error::NotSchur(_)
                | Error::Pole(_)
                | Error::NotDefectOne { .. }
                | Error::NotCompletelyNonUnitary { .. }
                | Error::NotContraction { .. }
                | Error::DegenerateParameters(_)
                | Error::NotRealizable(_)
                | Error::ProductCondition { .. }
                | Error::DegenerateTriangle
        )
    }

    /// Short machine-readable tag.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Degree { .. } => "DegreeError",
            Error::Convergence { .. } => "ConvergenceError",
            Error::InvalidInput(_) => "InvalidInput",
            Error::NotSchurStable { .. } => "NotSchurStableError",
            Error::Inversion { .. } => "InversionError",
            Error::DegenerateMeasure(_) => "DegenerateMeasureError",
            Error::IllConditioned(_) => "IllConditionedError",
            Error::NotSchur(_) => "NotSchurError",
            Error::Pole(_) => "PoleError",
            Error::InternalConsistency { .. } => "InternalConsistencyError",
            Error::NotDefectOne { .. } => "NotDefectOneError",
            Error::NotCompletelyNonUnitary { .. } => "NotCompletelyNonUnitaryError",
            Error::NotContraction { .. } => "NotContractionError",
            Error::Solver(_) => "SolverError",
            Error::DegenerateParameters(_) => "DegenerateParametersError",
            Error::NotRealizable(_) => "NotRealizableError",
            Error::ProductCondition { .. } => "ProductConditionError",
            Error::DegenerateTriangle => "DegenerateTriangleError",
            Error::Geometry(_) => "GeometryError",
        }
    }

    pub(crate) fn consistency(what: impl Into<String>, deviation: f64, tolerance: f64) -> Self {
        Error::InternalConsistency {
            what: what.into(),
            deviation,
            tolerance,
        }
    }
}

/// Fails with `InternalConsistency` when `deviation > tolerance` (or is NaN).
pub(crate) fn ensure_close(what: &str, deviation: f64, tolerance: f64) -> Result<()> {
    if deviation <= tolerance {
        Ok(())
    } else {
        Err(Error::consistency(what, deviation, tolerance))
    }
}
