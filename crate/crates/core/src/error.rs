use thiserror::Error;

/// Errors raised by the estimation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("need at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },

    #[error("sample interval must be positive and finite, got {0}")]
    InvalidInterval(f64),

    #[error("invalid {name}: {value}")]
    InvalidParameter { name: &'static str, value: f64 },

    #[error("moving-average window {k} is outside 1..={len}")]
    InvalidWindow { k: usize, len: usize },

    #[error("lag {lag} is outside 1..={max}")]
    InvalidLag { lag: usize, max: usize },

    #[error("input has zero variance")]
    ZeroVariance,

    #[error("degenerate sinusoid parameters: normalizing bracket is zero")]
    DegenerateParameters,

    #[error("integral coefficient `a` must be nonzero")]
    ZeroCoefficient,

    #[error("correlation value {0} lies outside [-1, 1]")]
    CorrelationOutOfRange(f64),

    #[error("false alarm rate {0} is outside (0, 0.5)")]
    InvalidFalseAlarmRate(f64),

    #[error("runs test dichotomy is degenerate: {above} above and {below} below the median")]
    DegenerateDichotomy { above: usize, below: usize },

    #[error("spectrum needs at least 2 bins, got {0}")]
    SpectrumTooShort(usize),

    #[error("no upward zero crossing found at t >= 0")]
    NoUpwardCrossing,

    #[error("|{value}| must be below the amplitude {amplitude}")]
    OutsideAmplitude { value: f64, amplitude: f64 },

    #[error("landmark multiple k = 2 or coincident landmark times")]
    DegenerateLandmarks,
}

pub type Result<T> = std::result::Result<T, Error>;
