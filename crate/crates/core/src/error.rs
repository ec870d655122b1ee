use thiserror::Error;

/// Errors raised by the analysis pipeline.
///
/// Numeric payloads are carried as `f64` regardless of the scalar type the
/// computation ran in.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square: {rows} rows, {cols} columns")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix contains a non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("weight matrix is not symmetric (relative asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("weight matrix is indefinite (smallest eigenvalue {min_eigenvalue:e})")]
    IndefiniteWeight { min_eigenvalue: f64 },

    #[error("state matrix is not Hurwitz: eigenvalue {re} {sign} {im_abs}i lies at or right of -{margin:e}",
        sign = if *im < 0.0 { '-' } else { '+' }, im_abs = im.abs())]
    NotHurwitz { re: f64, im: f64, margin: f64 },

    #[error("symmetric part of the state matrix is not Hurwitz (largest eigenvalue {max_eigenvalue})")]
    SymmetricPartNotStable { max_eigenvalue: f64 },

    #[error("Lyapunov system is numerically singular (near-marginal eigenvalue pair)")]
    SolverDegenerate,

    #[error("dimension {n} exceeds the limit {max} of this solver")]
    DimensionTooLarge { n: usize, max: usize },

    #[error("eigenvalue iteration did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("state matrix is not normal (residual {residual:e})")]
    NotNormal { residual: f64 },

    #[error("weight matrix eigenvalues are not all equal to {q} (spread {spread:e})")]
    UnequalWeights { q: f64, spread: f64 },

    #[error("decay rates a_i are not identical")]
    HeterogeneousDecay,

    #[error("subsystems are not identical (a_i or c_i differ)")]
    HeterogeneousParams,

    #[error("cyclic network violates the stability condition: gamma = {gamma} <= cos(pi/n) = {threshold}")]
    Unstable { gamma: f64, threshold: f64 },

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("integration step dt = {dt:e} is not below the limit {limit:e}")]
    StepTooLarge { dt: f64, limit: f64 },

    #[error("simulation diverged at step {step}")]
    Diverged { step: usize },
}

impl Error {
    /// True for failures that stem from instability of the analysed system
    /// rather than from malformed input or numerical breakdown.
    pub fn is_stability_failure(&self) -> bool {
        matches!(self, Error::NotHurwitz { .. } | Error::Unstable { .. } | Error::SymmetricPartNotStable { .. })
    }

    /// True for internal numerical breakdowns.
    pub fn is_numeric_failure(&self) -> bool {
        matches!(self, Error::SolverDegenerate | Error::NoConvergence { .. } | Error::Diverged { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
