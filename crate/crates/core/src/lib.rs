//! Physics-informed probabilistic generation of aircraft climb trajectories.
//!
//! The library couples a point-mass total-energy performance model with a
//! reduced-order representation of thrust and calibrated airspeed learned
//! from climb data. Contextual features (operator, route, forecast winds,
//! temperature deviations) condition probabilistic models over the
//! reduced-order weights; sampled weights are pushed back through the
//! physics core to generate plausible climb trajectories, which are then
//! scored with a probabilistic-skill suite.
//!
//! Pipeline stages, end to end:
//!
//! 1. [`synth`] — synthetic fleets, forecast fields and trajectory datasets
//!    with planted, configurable feature effects.
//! 2. [`rom`] — climb filtering, thrust inference, sub-trajectory
//!    splitting, basis fitting and sequential projection.
//! 3. [`features`] — forecast sampling, met statistics and the encoded
//!    conditioning vector.
//! 4. [`prob`] — Gaussian baseline, per-component Gaussian processes and
//!    deep ensembles over the weight space.
//! 5. [`sampler`] — weight sampling, physics integration, the minimum
//!    climb-rate rejection test and credible bands.
//! 6. [`metrics`] / [`fi`] — CRPS/RMSE skill evaluation and the
//!    random-forest feature-importance study.
//!
//! The `climbgen` binary chains these stages; [`pipeline`] holds the
//! command implementations and artifact formats.

pub mod atmosphere;
pub mod error;
pub mod features;
pub mod fi;
pub mod metrics;
pub mod perf;
pub mod pipeline;
pub mod prob;
pub mod rom;
pub mod sampler;
pub mod synth;

pub use error::{Error, Result};
