//! Moving-average (MA-k) FIR smoothing.
//!
//! The window is trailing: output sample `i` is the mean of input samples
//! `i ..= i+k-1` and carries the time of input sample `i+k-1`. The filter
//! therefore lags the signal by a group delay of `(k-1)/2` samples, which
//! callers subtract when reading landmark times off a smoothed record.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{SinusoidParams, TimeSeries};

/// Output of [`moving_average`]: `source_len − window_k + 1` samples on the
/// input's sampling grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothedSeries {
    window_k: usize,
    start_time: f64,
    dt: f64,
    samples: Vec<f64>,
    source_len: usize,
}

impl SmoothedSeries {
    pub fn window_k(&self) -> usize {
        self.window_k
    }

    pub fn source_len(&self) -> usize {
        self.source_len
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    /// Time of the first output sample (the last sample of the first window).
    pub fn start_time(&self) -> f64 {
        self.start_time
    }

    pub fn time(&self, i: usize) -> f64 {
        self.start_time + i as f64 * self.dt
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(|i| self.time(i))
    }

    /// Group delay of the trailing window in seconds.
    pub fn group_delay(&self) -> f64 {
        (self.window_k as f64 - 1.0) / 2.0 * self.dt
    }

    /// Sample times shifted back by the group delay, i.e. the centres of
    /// the averaging windows.
    pub fn centered_times(&self) -> impl Iterator<Item = f64> + '_ {
        let delay = self.group_delay();
        self.times().map(move |t| t - delay)
    }

    /// The smoothed record as a [`TimeSeries`], when it has two or more samples.
    pub fn to_series(&self) -> Option<TimeSeries> {
        TimeSeries::new(self.start_time, self.dt, self.samples.clone()).ok()
    }
}

pub fn moving_average(input: &TimeSeries, k: usize) -> Result<SmoothedSeries> {
    let n = input.len();
    if k == 0 || k > n {
        return Err(Error::InvalidWindow { k, len: n });
    }
    let x = input.samples();
    let samples: Vec<f64> = if k == 1 {
        x.to_vec()
    } else {
        x.windows(k)
            .map(|w| w.iter().sum::<f64>() / k as f64)
            .collect()
    };
    Ok(SmoothedSeries {
        window_k: k,
        start_time: input.time(k - 1),
        dt: input.dt(),
        samples,
        source_len: n,
    })
}

/// RMS difference between the smoothed record and `reference`, with each
/// smoothed sample compared at the centre of its averaging window.
pub fn rms_error(smoothed: &SmoothedSeries, reference: &SinusoidParams) -> f64 {
    let (sum, count) = smoothed
        .samples()
        .iter()
        .zip(smoothed.centered_times())
        .fold((0.0, 0usize), |(s, c), (&y, t)| {
            let d = y - reference.eval(t);
            (s + d * d, c + 1)
        });
    (sum / count as f64).sqrt()
}

/// Half the range of the smoothed record, `(max − min)/2`.
pub fn amplitude_estimate(smoothed: &SmoothedSeries) -> f64 {
    let (lo, hi) = smoothed
        .samples()
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &x| {
            (lo.min(x), hi.max(x))
        });
    (hi - lo) / 2.0
}

/// Amplitude gain of an MA-k filter on a sinusoid of `frequency_hz` sampled
/// every `dt`: `|sin(πfk·dt) / (k·sin(πf·dt))|`.
pub fn moving_average_gain(k: usize, frequency_hz: f64, dt: f64) -> f64 {
    let x = PI * frequency_hz * dt;
    let den = k as f64 * x.sin();
    if den == 0.0 {
        return 1.0;
    }
    ((k as f64 * x).sin() / den).abs()
}

/// Window lengths that span a whole number of periods, up to `max_k`.
///
/// A window covering full periods cancels the periodic component, which is
/// useful when isolating trend or noise; smoothing for shape recovery wants
/// windows well below one period. This is guidance only and no window is
/// enforced.
pub fn period_multiple_windows(period: f64, dt: f64, max_k: usize) -> Vec<usize> {
    let per = period / dt;
    if !(per.is_finite() && per >= 1.0) {
        return Vec::new();
    }
    (1..)
        .map(|m| (m as f64 * per).round() as usize)
        .take_while(|&k| k <= max_k)
        .filter(|&k| k >= 1)
        .collect()
}
