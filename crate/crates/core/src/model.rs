//! The sinusoid model `x(t) = A·sin(ωt + φ)`, uniformly sampled records,
//! seeded synthetic data and the structural landmarks of one period.

use std::f64::consts::{PI, TAU};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

/// Wraps an angle into `[-π, π)`.
pub fn wrap_phase(phase: f64) -> f64 {
    let wrapped = phase - TAU * ((phase + PI) / TAU).floor();
    // Rounding in the subtraction can land exactly on +π.
    if wrapped >= PI {
        wrapped - TAU
    } else {
        wrapped
    }
}

/// Amplitude, frequency and phase of `A·sin(2πf·t + φ)`.
///
/// The phase is stored wrapped into `[-π, π)`; inputs outside that range are
/// wrapped rather than rejected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinusoidParams {
    amplitude: f64,
    frequency_hz: f64,
    phase_rad: f64,
}

impl SinusoidParams {
    pub fn new(amplitude: f64, frequency_hz: f64, phase_rad: f64) -> Result<Self> {
        if !(amplitude.is_finite() && amplitude > 0.0) {
            return Err(Error::InvalidParameter {
                name: "amplitude",
                value: amplitude,
            });
        }
        if !(frequency_hz.is_finite() && frequency_hz > 0.0) {
            return Err(Error::InvalidParameter {
                name: "frequency_hz",
                value: frequency_hz,
            });
        }
        if !phase_rad.is_finite() {
            return Err(Error::InvalidParameter {
                name: "phase_rad",
                value: phase_rad,
            });
        }
        Ok(Self {
            amplitude,
            frequency_hz,
            phase_rad: wrap_phase(phase_rad),
        })
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn frequency_hz(&self) -> f64 {
        self.frequency_hz
    }

    pub fn phase_rad(&self) -> f64 {
        self.phase_rad
    }

    /// Angular frequency `2πf` in rad/s.
    pub fn omega(&self) -> f64 {
        TAU * self.frequency_hz
    }

    pub fn period(&self) -> f64 {
        1.0 / self.frequency_hz
    }

    /// `φ/ω`. Shifting `t` by this amount yields the primitive `A·sin(ωt)`.
    pub fn time_delay(&self) -> f64 {
        self.phase_rad / self.omega()
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.amplitude * (self.omega() * t + self.phase_rad).sin()
    }

    /// The same sinusoid with frequency expressed in cycles per sample for a
    /// sampling interval `dt`, so that lags can be counted in samples.
    pub fn per_sample(&self, dt: f64) -> Self {
        Self {
            frequency_hz: self.frequency_hz * dt,
            ..*self
        }
    }
}

/// Evaluates `params` at time `t`.
pub fn eval(params: &SinusoidParams, t: f64) -> f64 {
    params.eval(t)
}

/// A uniformly sampled real-valued record.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    start_time: f64,
    dt: f64,
    samples: Vec<f64>,
}

impl TimeSeries {
    pub fn new(start_time: f64, dt: f64, samples: Vec<f64>) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidInterval(dt));
        }
        if !start_time.is_finite() {
            return Err(Error::InvalidParameter {
                name: "start_time",
                value: start_time,
            });
        }
        if samples.len() < 2 {
            return Err(Error::TooFewSamples {
                min: 2,
                got: samples.len(),
            });
        }
        Ok(Self {
            start_time,
            dt,
            samples,
        })
    }

    pub fn start_time(&self) -> f64 {
        self.start_time
    }

    pub fn dt(&self) -> f64 {
        self.dt
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

    pub fn time(&self, i: usize) -> f64 {
        self.start_time + i as f64 * self.dt
    }

    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(|i| self.time(i))
    }

    /// `(t, value)` pairs in record order.
    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.samples
            .iter()
            .enumerate()
            .map(|(i, &x)| (self.time(i), x))
    }

    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.len() as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NoiseKind {
    Gaussian,
}

/// Additive noise configuration for [`synthesize`].
///
/// Samples are drawn from a ChaCha8 stream seeded with `seed` and mapped to
/// `N(0, sigma²)` by the ziggurat sampler of `rand_distr`. Both are fully
/// specified algorithms, so a given `(sigma, seed, n)` reproduces the same
/// sequence on every platform.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseSpec {
    pub kind: NoiseKind,
    pub sigma: f64,
    pub seed: u64,
}

impl NoiseSpec {
    pub fn gaussian(sigma: f64, seed: u64) -> Self {
        Self {
            kind: NoiseKind::Gaussian,
            sigma,
            seed,
        }
    }

    pub fn none() -> Self {
        Self::gaussian(0.0, 0)
    }
}

/// Samples `params` on `start + i·dt` for `i < n` and adds seeded noise.
pub fn synthesize(
    params: &SinusoidParams,
    noise: &NoiseSpec,
    n: usize,
    dt: f64,
    start: f64,
) -> Result<TimeSeries> {
    if n < 2 {
        return Err(Error::TooFewSamples { min: 2, got: n });
    }
    if !(dt.is_finite() && dt > 0.0) {
        return Err(Error::InvalidInterval(dt));
    }
    if !(noise.sigma.is_finite() && noise.sigma >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "sigma",
            value: noise.sigma,
        });
    }

    let mut samples: Vec<f64> = (0..n).map(|i| params.eval(start + i as f64 * dt)).collect();
    if noise.sigma > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(noise.seed);
        match noise.kind {
            NoiseKind::Gaussian => {
                for x in &mut samples {
                    let g: f64 = StandardNormal.sample(&mut rng);
                    *x += noise.sigma * g;
                }
            }
        }
    }
    TimeSeries::new(start, dt, samples)
}

/// Seeded zero-mean Gaussian noise with no signal underneath.
pub fn pure_noise(sigma: f64, seed: u64, n: usize, dt: f64) -> Result<TimeSeries> {
    if n < 2 {
        return Err(Error::TooFewSamples { min: 2, got: n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = (0..n)
        .map(|_| {
            let g: f64 = StandardNormal.sample(&mut rng);
            sigma * g
        })
        .collect();
    TimeSeries::new(0.0, dt, samples)
}

/// Time and model value where `ωt + φ = kπ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Landmark {
    /// `k` in `kπ`.
    pub multiple_of_pi: f64,
    pub time: f64,
    pub value: f64,
}

/// Zero crossings and extrema over one period of a delayed sinusoid.
#[derive(Debug, Clone, PartialEq)]
pub struct LandmarkTable {
    /// `t_0`, `t_{π/2}`, `t_π`, `t_{3π/2}`, `t_{2π}`, `t_{5π/2}` in that order.
    pub points: [Landmark; 6],
    /// `x(0) = A·sin φ`.
    pub value_at_origin: f64,
    /// `t_{5π/2} − t_{π/2}` for `φ ≥ 0`, `t_{2π} − t_0` for a time-ahead sinusoid.
    pub period: f64,
}

impl LandmarkTable {
    pub fn t0(&self) -> f64 {
        self.points[0].time
    }

    pub fn t_half_pi(&self) -> f64 {
        self.points[1].time
    }

    pub fn t_pi(&self) -> f64 {
        self.points[2].time
    }

    pub fn t_three_half_pi(&self) -> f64 {
        self.points[3].time
    }

    pub fn t_2pi(&self) -> f64 {
        self.points[4].time
    }

    pub fn t_five_half_pi(&self) -> f64 {
        self.points[5].time
    }

    /// The period split as quarter + half + quarter:
    /// `(t_π − t_{π/2}) + (t_{2π} − t_π) + (t_{5π/2} − t_{2π})`.
    pub fn period_decomposition(&self) -> [f64; 3] {
        [
            self.t_pi() - self.t_half_pi(),
            self.t_2pi() - self.t_pi(),
            self.t_five_half_pi() - self.t_2pi(),
        ]
    }
}

/// Time where the argument `ωt + φ` equals `k·π`.
pub fn landmark_time(params: &SinusoidParams, k: f64) -> f64 {
    (k * PI - params.phase_rad()) / params.omega()
}

pub fn landmarks(params: &SinusoidParams) -> LandmarkTable {
    const MULTIPLES: [f64; 6] = [0.0, 0.5, 1.0, 1.5, 2.0, 2.5];
    let points = MULTIPLES.map(|k| {
        let time = landmark_time(params, k);
        // The value at kπ is exact: zero for integer k, ±A at the extrema.
        let value = params.amplitude() * (k * PI).sin().round();
        Landmark {
            multiple_of_pi: k,
            time,
            value,
        }
    });
    let period = if params.phase_rad() < 0.0 {
        points[4].time - points[0].time
    } else {
        points[5].time - points[1].time
    };
    LandmarkTable {
        points,
        value_at_origin: params.eval(0.0),
        period,
    }
}
