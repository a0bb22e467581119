//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Error, Debug)]
pub enum Error {
    /// Input outside the physical domain of a formula.
    #[error("{quantity} = {value} outside valid range [{min}, {max}]")]
    OutOfRange {
        quantity: &'static str,
        value: f64,
        min: f64,
        max: f64,
    },

    /// The climb integration could not advance: excess power ran out.
    #[error("integration stalled at h = {altitude:.1} m (rocd <= 0)")]
    IntegrationStall { altitude: f64 },

    /// Climb-rate filtering removed every blip of a trajectory.
    #[error("no blips left after climb-rate filtering")]
    EmptyAfterFilter,

    /// Not enough usable curves/samples to fit.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// A sub-trajectory covers fewer than two grid nodes.
    #[error("observed span covers fewer than two grid nodes")]
    SpanTooShort,

    /// Every generated sample failed the minimum climb-rate test.
    #[error(
        "all {n_requested} samples rejected ({stalled} stalled, {below_floor} below the \
         {floor:.0} ft/min floor)"
    )]
    AllRejected {
        n_requested: usize,
        stalled: usize,
        below_floor: usize,
        floor: f64,
    },

    /// A persisted model was fitted against a different feature schema.
    #[error("feature schema mismatch: artifact has {artifact}, runtime has {runtime}")]
    SchemaMismatch { artifact: String, runtime: String },

    /// Optimisation produced a non-finite objective.
    #[error("fit diverged: {0}")]
    Diverged(String),

    /// Degenerate input that makes the requested statistic undefined.
    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("invalid config: {0}")]
    InvalidConfig(String),

    #[error("parse error in {path}: {msg}")]
    Parse { path: String, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
