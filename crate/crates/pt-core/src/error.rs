//! Error type shared by all modules.

use num_complex::Complex64;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// The adaptive integrator could not take a step without violating the
    /// local error tolerance.
    #[error("step size underflow at z = {at} (|h| = {h:.3e})")]
    StepUnderflow { at: Complex64, h: f64 },

    #[error("non-finite solution value at z = {at}")]
    NonFinite { at: Complex64 },

    #[error("initialization point rejected: {0}")]
    BadStartPoint(String),

    /// The contour used for argument-principle counting passed too close to
    /// a zero of the function; the caller should perturb the box.
    #[error("contour too close to a zero (min |W| = {min_w:.3e}); perturb the search box")]
    BoundaryNearZero { min_w: f64 },

    #[error("root refinement did not converge after {iterations} iterations (trace: {trace:?})")]
    NoConvergence {
        iterations: usize,
        trace: Vec<(Complex64, f64)>,
    },

    #[error("lambda = {lambda} is not an eigenvalue at the working tolerance (mismatch {mismatch:.3e})")]
    NotAnEigenvalue { lambda: Complex64, mismatch: f64 },

    #[error("requested value {0} is outside the computed grid")]
    OutsideGrid(f64),

    #[error("tail truncation budget exceeded: {0}; widen the grid")]
    TailBudget(String),

    #[error("zero localization failed: {0}")]
    ZeroSearch(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),

    #[error("schema version mismatch: expected {expected}, found {found}")]
    SchemaVersion { expected: String, found: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
