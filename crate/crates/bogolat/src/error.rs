//! Error taxonomy shared by every module.

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("coefficient at index {index} is zero; lattice coefficients must be nonzero")]
    ZeroCoefficient { index: usize },

    #[error("coefficient window of {window} entries is too small: {detail}")]
    WindowTooSmall { window: usize, detail: String },

    #[error(
        "moment index (k={k}, m={m}, n={n}) outside table with k_max={k_max}, r={r}, q={q}"
    )]
    IndexBeyondTable {
        k: usize,
        m: usize,
        n: usize,
        k_max: usize,
        r: usize,
        q: usize,
    },

    #[error("|lambda| = {lambda_abs} is not above the row-sum bound {bound}")]
    LambdaInsideBound { lambda_abs: f64, bound: f64 },

    #[error("shifted matrix lambda*E - M is numerically singular")]
    SingularShift,

    #[error("leading minor {k} is numerically near-singular (|det| = {value:e})")]
    NearSingular { k: usize, value: f64 },

    #[error("degenerate moment data: {detail}")]
    DegenerateMoments { detail: String },

    #[error("moment table violates the sparsity pattern at (k={k}, m={m}, n={n})")]
    SparsityViolated { k: usize, m: usize, n: usize },

    #[error("series tail estimate {tail:e} above tolerance {tol:e} after {terms} terms")]
    SeriesNotConverged { tail: f64, tol: f64, terms: usize },

    #[error("series denominator vanished at t = {t}")]
    DenominatorVanished { t: f64 },

    #[error("solution exceeded the overflow guard at t = {t} (coefficient {index})")]
    BlowUp { t: f64, index: usize },

    #[error("time {t} lies beyond the trusted series horizon")]
    AdaptiveHorizonExceeded { t: f64 },

    #[error("trajectory lacks the co-integrated accumulators required here")]
    MissingAccumulators,

    #[error("insufficient stored history for quadrature: {detail}")]
    MissingHistory { detail: String },

    #[error("linear system for the recurrence coefficients is rank-deficient")]
    RankDeficient,

    #[error("dimension mismatch: {detail}")]
    DimensionMismatch { detail: String },

    #[error("cannot parse {text:?} as a number")]
    InvalidNumber { text: String },
}

impl Error {
    /// Short machine-readable tag for structured (JSON) error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ZeroCoefficient { .. } => "ZeroCoefficient",
            Error::WindowTooSmall { .. } => "WindowTooSmall",
            Error::IndexBeyondTable { .. } => "IndexBeyondTable",
            Error::LambdaInsideBound { .. } => "LambdaInsideBound",
            Error::SingularShift => "SingularShift",
            Error::NearSingular { .. } => "NearSingular",
            Error::DegenerateMoments { .. } => "DegenerateMoments",
            Error::SparsityViolated { .. } => "SparsityViolated",
            Error::SeriesNotConverged { .. } => "SeriesNotConverged",
            Error::DenominatorVanished { .. } => "DenominatorVanished",
            Error::BlowUp { .. } => "BlowUp",
            Error::AdaptiveHorizonExceeded { .. } => "AdaptiveHorizonExceeded",
            Error::MissingAccumulators => "MissingAccumulators",
            Error::MissingHistory { .. } => "MissingHistory",
            Error::RankDeficient => "RankDeficient",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::InvalidNumber { .. } => "InvalidNumber",
        }
    }

    /// Offending coefficient/moment index when one exists.
    pub fn index(&self) -> Option<usize> {
        match self {
            Error::ZeroCoefficient { index } => Some(*index),
            Error::BlowUp { index, .. } => Some(*index),
            Error::IndexBeyondTable { k, .. } => Some(*k),
            Error::NearSingular { k, .. } => Some(*k),
            Error::SparsityViolated { k, .. } => Some(*k),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
