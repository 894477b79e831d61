//! Autocorrelation: the discrete circular serial correlation of a record and
//! the analytic ACF models of `A·sin(ωt + φ)`.
//!
//! Model lags are counted in samples, so the models expect parameters whose
//! frequency is in cycles per sample (see [`SinusoidParams::per_sample`]).
//! At `dt = 1` the two coincide.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::model::{SinusoidParams, TimeSeries};

/// Allowed excursion of an ACF value beyond `[-1, 1]` before
/// [`frequency_from_acf`] treats it as a non-ACF input.
pub const CORRELATION_CLAMP_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AcfKind {
    /// Mean-centred circular serial correlation of sampled data.
    DiscreteCircular,
    /// Analytic model treating amplitude, frequency and phase as unknown.
    ModelFull,
    /// Analytic model averaged over a random phase, `cos(ωτ)`.
    ModelReduced,
}

/// Lag-indexed correlation values, `values[τ]` for `τ = 0..=max_lag`.
#[derive(Debug, Clone, PartialEq)]
pub struct AcfSeries {
    kind: AcfKind,
    values: Vec<f64>,
}

impl AcfSeries {
    pub fn kind(&self) -> AcfKind {
        self.kind
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn max_lag(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, lag: usize) -> Option<f64> {
        self.values.get(lag).copied()
    }

    /// Lag of the first local maximum after the correlation has gone
    /// negative, i.e. one period read off the ACF. `None` when the series
    /// never dips below zero and comes back up.
    pub fn period_lag(&self) -> Option<usize> {
        let v = &self.values;
        let first_negative = v.iter().position(|&r| r < 0.0)?;
        (first_negative + 1..v.len().saturating_sub(1))
            .find(|&i| v[i] > 0.0 && v[i] >= v[i - 1] && v[i] > v[i + 1])
    }
}

/// Circular serial correlation of the mean-centred record, normalized by
/// its lag-0 value:
///
/// `r(τ) = Σ_i y_i·y_{(i+τ) mod N} / Σ_i y_i²`
///
/// Only lags up to `N/2` are summed; the rest are mirrored through
/// `r(τ) = r(N−τ)`, so the fold-over symmetry holds exactly.
pub fn circular_acf(input: &TimeSeries, max_lag: usize) -> Result<AcfSeries> {
    let n = input.len();
    if max_lag == 0 || max_lag > n - 1 {
        return Err(Error::InvalidLag {
            lag: max_lag,
            max: n - 1,
        });
    }
    let x = input.samples();
    if x.iter().all(|&v| v == x[0]) {
        return Err(Error::ZeroVariance);
    }
    let mean = input.mean();
    let y: Vec<f64> = x.iter().map(|v| v - mean).collect();
    let energy: f64 = y.iter().map(|v| v * v).sum();
    let scale = x.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
    if energy <= n as f64 * (1e-14 * scale).powi(2) {
        return Err(Error::ZeroVariance);
    }

    let half = max_lag.min(n / 2);
    let mut values = Vec::with_capacity(max_lag + 1);
    values.push(1.0);
    for lag in 1..=half {
        let s: f64 = (0..n).map(|i| y[i] * y[(i + lag) % n]).sum();
        values.push(s / energy);
    }
    for lag in half + 1..=max_lag {
        values.push(values[n - lag]);
    }
    Ok(AcfSeries {
        kind: AcfKind::DiscreteCircular,
        values,
    })
}

/// Coefficients of `∫_u^v sin(ax + b)·sin(ax + d) dx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralParams {
    pub a: f64,
    pub b: f64,
    pub d: f64,
    pub u: f64,
    pub v: f64,
}

/// Closed form of `∫_u^v sin(ax + b)·sin(ax + d) dx`:
///
/// `(v−u)/2·cos(b−d) − sin[a(v−u)]·cos[a(u+v) + b + d] / (2a)`
pub fn sine_product_integral(p: &IntegralParams) -> Result<f64> {
    if p.a == 0.0 {
        return Err(Error::ZeroCoefficient);
    }
    if p.v < p.u {
        return Err(Error::InvalidParameter {
            name: "v",
            value: p.v,
        });
    }
    let IntegralParams { a, b, d, u, v } = *p;
    Ok((v - u) / 2.0 * (b - d).cos()
        - (a * (v - u)).sin() * (a * (u + v) + b + d).cos() / (2.0 * a))
}

/// `1 − sin(2πω)·cos(2πω + 2φ)/(2πω)`: the model ACF at lag 0 before
/// normalization, in units of `A²/2`.
pub fn normalization_bracket(params: &SinusoidParams) -> f64 {
    let w = params.omega();
    let two_pi_w = TAU * w;
    1.0 - two_pi_w.sin() * (two_pi_w + 2.0 * params.phase_rad()).cos() / two_pi_w
}

/// `C = (2/A²)·[1 − sin(2πω)·cos(2πω + 2φ)/(2πω)]⁻¹`, the factor that makes
/// the full model ACF equal 1 at lag 0.
pub fn normalizing_constant(params: &SinusoidParams) -> Result<f64> {
    let bracket = normalization_bracket(params);
    if bracket.abs() < f64::EPSILON {
        return Err(Error::DegenerateParameters);
    }
    let a = params.amplitude();
    Ok(2.0 / (a * a) / bracket)
}

/// Unnormalized full-model ACF over `t ∈ [0, 2π]`:
/// `(A²/2π)·{π·cos(ωτ) − sin(2πω)·cos((2π + τ)ω + 2φ)/(2ω)}`.
pub fn model_acf_unnormalized(params: &SinusoidParams, lag: f64) -> f64 {
    let w = params.omega();
    let a = params.amplitude();
    let two_pi_w = TAU * w;
    a * a / TAU
        * (PI * (w * lag).cos()
            - two_pi_w.sin() * ((TAU + lag) * w + 2.0 * params.phase_rad()).cos() / (2.0 * w))
}

/// Full model ACF, normalized to 1 at lag 0:
///
/// `R(τ) = [cos(ωτ) − sin(2πω)·cos((2π+τ)ω + 2φ)/(2πω)] / [1 − sin(2πω)·cos(2πω + 2φ)/(2πω)]`
///
/// The values are not bounded by 1 in general; for parameters where
/// `sin(2πω)·sin(2πω + 2φ)` is large the numerator can outrun the bracket.
pub fn model_acf_full(params: &SinusoidParams, max_lag: usize) -> Result<AcfSeries> {
    if max_lag == 0 {
        return Err(Error::InvalidLag {
            lag: 0,
            max: usize::MAX,
        });
    }
    let bracket = normalization_bracket(params);
    if bracket.abs() < f64::EPSILON {
        return Err(Error::DegenerateParameters);
    }
    let w = params.omega();
    let two_pi_w = TAU * w;
    let s = two_pi_w.sin() / two_pi_w;
    let phi2 = 2.0 * params.phase_rad();
    let mut values = Vec::with_capacity(max_lag + 1);
    values.push(1.0);
    values.extend((1..=max_lag).map(|lag| {
        let tau = lag as f64;
        ((w * tau).cos() - s * ((TAU + tau) * w + phi2).cos()) / bracket
    }));
    Ok(AcfSeries {
        kind: AcfKind::ModelFull,
        values,
    })
}

/// Reduced model ACF `cos(ωτ)` (the `A²/2` scale dropped).
pub fn model_acf_reduced(params: &SinusoidParams, max_lag: usize) -> Result<AcfSeries> {
    if max_lag == 0 {
        return Err(Error::InvalidLag {
            lag: 0,
            max: usize::MAX,
        });
    }
    let w = params.omega();
    let values = (0..=max_lag).map(|lag| (w * lag as f64).cos()).collect();
    Ok(AcfSeries {
        kind: AcfKind::ModelReduced,
        values,
    })
}

/// Frequency (cycles per lag unit) from one ACF value of `cos(2πfτ)`:
/// `f = arccos(r)/(2πτ)`, principal branch.
///
/// `r` within [`CORRELATION_CLAMP_SLACK`] of `[-1, 1]` is clamped; larger
/// excursions are rejected. `r = 1` returns 0, which carries no frequency
/// information.
pub fn frequency_from_acf(r_value: f64, tau: usize) -> Result<f64> {
    if tau == 0 {
        return Err(Error::InvalidLag {
            lag: 0,
            max: usize::MAX,
        });
    }
    if !r_value.is_finite() || r_value.abs() > 1.0 + CORRELATION_CLAMP_SLACK {
        return Err(Error::CorrelationOutOfRange(r_value));
    }
    Ok(r_value.clamp(-1.0, 1.0).acos() / (TAU * tau as f64))
}
