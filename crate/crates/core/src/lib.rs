//! Parameter estimation for a single noise-corrupted sinusoid
//! `x(t) = A·sin(ωt + φ)` sampled on a uniform grid.
//!
//! The pipeline screens the record for signal (runs test, then circular
//! ACF significance), smooths it with a moving average, reads the frequency
//! off the DFT, the amplitude off the smoothed range, and the phase from a
//! least-squares grid search with crossover-time cross-checks.

pub mod acf;
pub mod cli;
pub mod error;
pub mod estimate;
pub mod model;
pub mod screening;
pub mod smoothing;
pub mod spectrum;

pub use error::{Error, Result};
pub use estimate::{
    estimate_parameters, AmplitudeMethod, EstimationReport, ObjectiveRange, PipelineConfig,
};
pub use model::{NoiseSpec, SinusoidParams, TimeSeries};
pub use screening::{screen, ScreeningDecision, Verdict};
