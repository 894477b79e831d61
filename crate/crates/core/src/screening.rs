//! Two-gate signal/noise screen.
//!
//! Gate 1 is a Wald-Wolfowitz runs test about the median: a record that
//! looks random is rejected as noise and processing stops. Gate 2 checks the
//! circular ACF against symmetric significance bounds `z_{1−FAR/2}/√N`.
//!
//! The gate-2 rule is a stand-in for an unpublished interpretation
//! procedure. A record passes when at least
//! `max(2, ⌈0.05·⌊N/2⌋⌉)` lags in `1..=⌊N/2⌋` exceed the bounds and the
//! exceeding lags include both signs.

use statrs::distribution::{ContinuousCDF, Normal};

use crate::acf::{circular_acf, AcfSeries};
use crate::error::{Error, Result};
use crate::model::TimeSeries;

/// Smallest record the normal approximation of the runs test is used on.
pub const MIN_SCREEN_LEN: usize = 20;

pub const DEFAULT_FAR: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Signal,
    Noise,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FailedGate {
    None,
    Gate1,
    Gate2,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RunsTestOutcome {
    pub z: f64,
    pub runs: usize,
    pub n_above: usize,
    pub n_below: usize,
    pub is_random: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScreeningDecision {
    pub runs_statistic: f64,
    pub runs_count: usize,
    pub n_above: usize,
    pub n_below: usize,
    /// Significant lags in `1..=N/2`; zero when gate 1 stopped the screen.
    pub acf_exceedances: usize,
    pub required_exceedances: usize,
    pub acf_bound: f64,
    pub far: f64,
    pub verdict: Verdict,
    pub gate_failed: FailedGate,
    /// The gate-2 ACF up to lag `N/2`, absent when gate 1 stopped the screen.
    pub acf: Option<AcfSeries>,
}

fn check_far(far: f64) -> Result<()> {
    if far > 0.0 && far < 0.5 {
        Ok(())
    } else {
        Err(Error::InvalidFalseAlarmRate(far))
    }
}

/// Two-sided critical value `z_{1−far/2}` of the standard normal.
pub fn critical_z(far: f64) -> Result<f64> {
    check_far(far)?;
    Ok(Normal::standard().inverse_cdf(1.0 - far / 2.0))
}

fn median(x: &[f64]) -> f64 {
    let mut s = x.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    if n % 2 == 1 {
        s[n / 2]
    } else {
        (s[n / 2 - 1] + s[n / 2]) / 2.0
    }
}

/// Runs above/below the median, with the normal approximation
/// `μ = 2n₁n₂/(n₁+n₂) + 1`, `σ² = 2n₁n₂(2n₁n₂ − n₁ − n₂)/[(n₁+n₂)²(n₁+n₂−1)]`.
/// Samples equal to the median are dropped.
pub fn runs_test(input: &TimeSeries, far: f64) -> Result<RunsTestOutcome> {
    check_far(far)?;
    let x = input.samples();
    if x.len() < MIN_SCREEN_LEN {
        return Err(Error::TooFewSamples {
            min: MIN_SCREEN_LEN,
            got: x.len(),
        });
    }
    let med = median(x);
    let signs: Vec<bool> = x.iter().filter(|&&v| v != med).map(|&v| v > med).collect();
    let n_above = signs.iter().filter(|&&s| s).count();
    let n_below = signs.len() - n_above;
    if n_above == 0 || n_below == 0 {
        return Err(Error::DegenerateDichotomy {
            above: n_above,
            below: n_below,
        });
    }
    let runs = 1 + signs.windows(2).filter(|w| w[0] != w[1]).count();

    let (n1, n2) = (n_above as f64, n_below as f64);
    let total = n1 + n2;
    let mean = 2.0 * n1 * n2 / total + 1.0;
    let var = 2.0 * n1 * n2 * (2.0 * n1 * n2 - n1 - n2) / (total * total * (total - 1.0));
    if var <= 0.0 {
        return Err(Error::DegenerateDichotomy {
            above: n_above,
            below: n_below,
        });
    }
    let z = (runs as f64 - mean) / var.sqrt();
    Ok(RunsTestOutcome {
        z,
        runs,
        n_above,
        n_below,
        is_random: z.abs() < critical_z(far)?,
    })
}

/// Significance bound on a circular ACF value for a record of `n` samples.
pub fn acf_bounds(n: usize, far: f64) -> Result<f64> {
    if n < MIN_SCREEN_LEN {
        return Err(Error::TooFewSamples {
            min: MIN_SCREEN_LEN,
            got: n,
        });
    }
    Ok(critical_z(far)? / (n as f64).sqrt())
}

pub fn required_exceedances(n: usize) -> usize {
    let half = (n / 2) as f64;
    ((0.05 * half).ceil() as usize).max(2)
}

pub fn screen(input: &TimeSeries, far: f64) -> Result<ScreeningDecision> {
    let runs = runs_test(input, far)?;
    let n = input.len();
    let bound = acf_bounds(n, far)?;
    let required = required_exceedances(n);
    let mut decision = ScreeningDecision {
        runs_statistic: runs.z,
        runs_count: runs.runs,
        n_above: runs.n_above,
        n_below: runs.n_below,
        acf_exceedances: 0,
        required_exceedances: required,
        acf_bound: bound,
        far,
        verdict: Verdict::Noise,
        gate_failed: FailedGate::Gate1,
        acf: None,
    };
    if runs.is_random {
        return Ok(decision);
    }

    let acf = circular_acf(input, n / 2)?;
    let significant: Vec<f64> = acf.values()[1..]
        .iter()
        .copied()
        .filter(|r| r.abs() > bound)
        .collect();
    let both_signs = significant.iter().any(|&r| r > 0.0) && significant.iter().any(|&r| r < 0.0);
    decision.acf_exceedances = significant.len();
    decision.acf = Some(acf);
    if significant.len() >= required && both_signs {
        decision.verdict = Verdict::Signal;
        decision.gate_failed = FailedGate::None;
    } else {
        decision.gate_failed = FailedGate::Gate2;
    }
    Ok(decision)
}
