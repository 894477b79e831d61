//! Parameter recovery and the end-to-end estimation pipeline.
//!
//! Frequency comes from the DFT peak, falling back to the ACF period, the
//! arccosine of the ACF and the moving-average period in that order.
//! Amplitude comes from a projection onto the sine and cosine at that
//! frequency or, on request, from the range of the moving-average record.
//! Phase comes from a least-squares grid search with `A` and `ω` held fixed.
//! Closed-form phase readings from crossover times, the origin value and a
//! single point of the curve serve as cross-checks.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use crate::acf::{circular_acf, frequency_from_acf, model_acf_full, AcfSeries};
use crate::error::{Error, Result};
use crate::model::{wrap_phase, SinusoidParams, TimeSeries};
use crate::screening::{screen, ScreeningDecision, Verdict, DEFAULT_FAR};
use crate::smoothing::{amplitude_estimate, moving_average, SmoothedSeries};
use crate::spectrum::{dft_magnitude, Spectrum};

/// Coarse phase grid spacing in radians.
pub const COARSE_STEP: f64 = 0.01;
/// Refinement grid spacing in radians.
pub const FINE_STEP: f64 = 0.001;
/// Half-width of the coarse sweep when warm-started from a crossover estimate.
pub const WARM_START_HALF_WIDTH: f64 = 0.5;
/// Relative disagreement between frequency readings that raises a warning.
pub const FREQUENCY_AGREEMENT: f64 = 0.2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ObjectiveRange {
    /// Samples with `start ≤ t ≤ start + T`.
    #[default]
    OnePeriod,
    FullRecord,
}

/// How the pipeline reads the amplitude once the frequency is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AmplitudeMethod {
    /// Least-squares `√(a² + b²)` from `x ≈ a·sin(ωt) + b·cos(ωt)`.
    #[default]
    Projection,
    /// `(max − min)/2` of the moving-average record.
    Range,
}

impl AmplitudeMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Projection => "projection",
            Self::Range => "range",
        }
    }
}

/// Tunable parameters of [`estimate_parameters`].
#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub far: f64,
    pub ma_k: usize,
    pub objective_range: ObjectiveRange,
    /// Narrow the coarse phase sweep to ±0.5 rad around the crossover estimate.
    pub warm_start: bool,
    /// Last lag of the reported model ACF; `None` means `N/2`.
    pub max_lag: Option<usize>,
    /// Fit even when screening says noise.
    pub bypass_screening: bool,
    /// Lag at which the arccosine frequency check reads the data ACF.
    pub acf_check_lag: usize,
    pub amplitude_method: AmplitudeMethod,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            far: DEFAULT_FAR,
            ma_k: 5,
            objective_range: ObjectiveRange::OnePeriod,
            warm_start: false,
            max_lag: None,
            bypass_screening: false,
            acf_check_lag: 2,
            amplitude_method: AmplitudeMethod::Projection,
        }
    }
}

/// `Σ [X(t) − A·sin(ωt + φ)]²` with `A` and `f` fixed and `φ` free.
#[derive(Debug, Clone, Copy)]
pub struct PhaseObjective<'a> {
    pub data: &'a TimeSeries,
    pub fixed_amplitude: f64,
    pub fixed_frequency_hz: f64,
    pub range: ObjectiveRange,
}

impl<'a> PhaseObjective<'a> {
    pub fn new(
        data: &'a TimeSeries,
        fixed_amplitude: f64,
        fixed_frequency_hz: f64,
        range: ObjectiveRange,
    ) -> Result<Self> {
        if !(fixed_amplitude.is_finite() && fixed_amplitude > 0.0) {
            return Err(Error::InvalidParameter {
                name: "amplitude",
                value: fixed_amplitude,
            });
        }
        if !(fixed_frequency_hz.is_finite() && fixed_frequency_hz > 0.0) {
            return Err(Error::InvalidParameter {
                name: "frequency_hz",
                value: fixed_frequency_hz,
            });
        }
        Ok(Self {
            data,
            fixed_amplitude,
            fixed_frequency_hz,
            range,
        })
    }

    fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let start = self.data.start_time();
        // Half a sample of slack keeps t = T when it falls on the grid.
        let end = match self.range {
            ObjectiveRange::OnePeriod => {
                start + 1.0 / self.fixed_frequency_hz + 1e-9 * self.data.dt()
            }
            ObjectiveRange::FullRecord => f64::INFINITY,
        };
        self.data.points().take_while(move |&(t, _)| t <= end)
    }

    pub fn value(&self, phi: f64) -> f64 {
        let w = TAU * self.fixed_frequency_hz;
        let a = self.fixed_amplitude;
        self.samples()
            .map(|(t, x)| {
                let r = x - a * (w * t + phi).sin();
                r * r
            })
            .sum()
    }
}

/// Free-standing form of [`PhaseObjective::value`].
pub fn phase_objective_value(obj: &PhaseObjective<'_>, phi: f64) -> f64 {
    obj.value(phi)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseFit {
    pub phase_rad: f64,
    pub objective: f64,
}

/// Lowest point on `start + step·j` for `j = 0..count`; ties keep the smaller angle.
fn scan(obj: &PhaseObjective<'_>, start: f64, step: f64, count: usize) -> PhaseFit {
    let mut best = PhaseFit {
        phase_rad: start,
        objective: f64::INFINITY,
    };
    for j in 0..count {
        let phi = start + step * j as f64;
        let v = obj.value(phi);
        if v < best.objective {
            best = PhaseFit {
                phase_rad: phi,
                objective: v,
            };
        }
    }
    best
}

fn refine(obj: &PhaseObjective<'_>, coarse: PhaseFit) -> PhaseFit {
    let mut best = PhaseFit {
        phase_rad: coarse.phase_rad,
        objective: f64::INFINITY,
    };
    for i in -10..=10 {
        let phi = coarse.phase_rad + FINE_STEP * i as f64;
        let v = obj.value(phi);
        if v < best.objective {
            best = PhaseFit {
                phase_rad: phi,
                objective: v,
            };
        }
    }
    PhaseFit {
        phase_rad: wrap_phase(best.phase_rad),
        objective: best.objective,
    }
}

/// Coarse sweep of `φ ∈ {−π, −π + 0.01, …} ∩ [−π, π)`, then a 0.001-step
/// pass over `±0.01` around the coarse minimizer.
pub fn phase_grid_search(obj: &PhaseObjective<'_>) -> PhaseFit {
    let upper = (TAU / COARSE_STEP).ceil() as usize;
    let count = (0..=upper)
        .take_while(|&j| -PI + COARSE_STEP * (j as f64) < PI)
        .count();
    refine(obj, scan(obj, -PI, COARSE_STEP, count))
}

/// As [`phase_grid_search`] but the coarse sweep covers only
/// `center ± 0.5` rad.
pub fn phase_grid_search_around(obj: &PhaseObjective<'_>, center: f64) -> PhaseFit {
    let count = (2.0 * WARM_START_HALF_WIDTH / COARSE_STEP).round() as usize + 1;
    refine(
        obj,
        scan(obj, center - WARM_START_HALF_WIDTH, COARSE_STEP, count),
    )
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossoverPhase {
    pub degrees: f64,
    pub radians: f64,
}

/// Phase from the period and the second zero crossing:
/// `φ = 2π(T − t_{2π})/T`, i.e. `ω·Δt` with `Δt = T − t_{2π}`.
pub fn phase_from_crossover(period: f64, t_2pi: f64) -> Result<CrossoverPhase> {
    if !(period.is_finite() && period > 0.0) {
        return Err(Error::InvalidParameter {
            name: "period",
            value: period,
        });
    }
    let frac = (period - t_2pi) / period;
    Ok(CrossoverPhase {
        degrees: frac * 360.0,
        radians: TAU * frac,
    })
}

/// Phase from any landmark `t_{kπ}` besides `t_{2π}`:
/// `φ = (T − t_{2π})/(t_{kπ} − t_{2π})·(kπ − 2π)`.
pub fn phase_from_landmarks_general(period: f64, t_2pi: f64, t_kpi: f64, k: f64) -> Result<f64> {
    if k == 2.0 || t_kpi == t_2pi {
        return Err(Error::DegenerateLandmarks);
    }
    Ok((period - t_2pi) / (t_kpi - t_2pi) * (k * PI - TAU))
}

/// Phase from the right triangle at the origin: `arctan(x0/√(A² − x0²))`.
/// Covers `|φ| < π/2` only.
pub fn phase_arctan_at_origin(amplitude: f64, x0: f64) -> Result<f64> {
    if x0.abs() >= amplitude {
        return Err(Error::OutsideAmplitude {
            value: x0,
            amplitude,
        });
    }
    Ok((x0 / (amplitude * amplitude - x0 * x0).sqrt()).atan())
}

/// `arcsin(y/A) − ωt`, wrapped. The principal arcsine branch is only right
/// when `t` lies on a rising quarter-cycle.
pub fn phase_arcsin_at_time(amplitude: f64, omega: f64, t: f64, y: f64) -> Result<f64> {
    if y.abs() > amplitude {
        return Err(Error::OutsideAmplitude {
            value: y,
            amplitude,
        });
    }
    Ok(wrap_phase((y / amplitude).asin() - omega * t))
}

/// Upward zero crossings of the smoothed record, on the group-delay
/// corrected time axis, by linear interpolation between bracketing samples.
pub fn upward_crossings(smoothed: &SmoothedSeries) -> Vec<f64> {
    let s = smoothed.samples();
    let times: Vec<f64> = smoothed.centered_times().collect();
    s.windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] < 0.0 && w[1] >= 0.0)
        .map(|(i, w)| times[i] + (-w[0]) / (w[1] - w[0]) * smoothed.dt())
        .collect()
}

/// Time of `t_{2π}`: the first upward zero crossing after `t = 0`, read
/// off the smoothed record and corrected for the moving-average group
/// delay `(k−1)/2·dt`.
///
/// For `0 ≤ φ < π` this is the second zero crossing on `t ≥ 0` (after the
/// downward crossing `t_π`). For a time-ahead sinusoid it is `t_0` and the
/// crossover phase formula yields `φ + 2π`, which callers wrap.
pub fn detect_t2pi(smoothed: &SmoothedSeries) -> Result<f64> {
    upward_crossings(smoothed)
        .into_iter()
        .find(|&t| t > 0.0)
        .ok_or(Error::NoUpwardCrossing)
}

/// Least-squares amplitude of a sinusoid at a known frequency.
///
/// Solves the 2×2 normal equations for `x(t) ≈ a·sin(ωt) + b·cos(ωt)` over
/// every sample and returns `√(a² + b²)`. On a DFT bin this equals
/// `2|X(m)|/N`.
pub fn amplitude_projection(input: &TimeSeries, frequency_hz: f64) -> Result<f64> {
    if !(frequency_hz > 0.0 && frequency_hz.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "frequency_hz",
            value: frequency_hz,
        });
    }
    let w = TAU * frequency_hz;
    let (mut ss, mut sc, mut cc, mut xs, mut xc) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (t, x) in input.points() {
        let (s, c) = (w * t).sin_cos();
        ss += s * s;
        sc += s * c;
        cc += c * c;
        xs += x * s;
        xc += x * c;
    }
    let det = ss * cc - sc * sc;
    let scale = (ss + cc) / 2.0;
    if det.abs() <= 1e-9 * scale * scale {
        return Err(Error::DegenerateParameters);
    }
    let a = (xs * cc - xc * sc) / det;
    let b = (xc * ss - xs * sc) / det;
    Ok(a.hypot(b))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrequencySource {
    Fft,
    AcfPeriod,
    AcfArccos,
    MaPeriod,
}

impl FrequencySource {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::Fft => "fft",
            Self::AcfPeriod => "acf_period",
            Self::AcfArccos => "acf_arccos",
            Self::MaPeriod => "ma_period",
        }
    }
}

/// Every frequency reading taken, in Hz.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FrequencyChecks {
    pub fft_hz: Option<f64>,
    pub acf_arccos_hz: Option<f64>,
    pub acf_period_hz: Option<f64>,
    pub ma_period_hz: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fit {
    pub params: SinusoidParams,
    pub amplitude_method: AmplitudeMethod,
    /// `(max − min)/2` of the smoothed record, whichever method was used.
    pub amplitude_range: f64,
    /// Least-squares amplitude at the chosen frequency, if solvable.
    pub amplitude_projection: Option<f64>,
    pub frequency_source: FrequencySource,
    pub frequency_checks: FrequencyChecks,
    pub t_2pi: Option<f64>,
    /// `φ/ω` in seconds.
    pub delta_t: f64,
    pub objective_value: f64,
    pub objective_range: ObjectiveRange,
    pub phase_cross_checks: BTreeMap<String, f64>,
    pub smoothing_k: usize,
    pub warnings: Vec<String>,
    pub smoothed: SmoothedSeries,
    pub spectrum: Spectrum,
    /// Circular ACF of the input up to `N/2`.
    pub data_acf: AcfSeries,
    /// Full-model ACF of the fitted sinusoid, lags in samples.
    pub model_acf: AcfSeries,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimationReport {
    pub screening: ScreeningDecision,
    /// `None` when screening rejected the record.
    pub fit: Option<Fit>,
}

impl EstimationReport {
    pub fn verdict(&self) -> Verdict {
        self.screening.verdict
    }

    pub fn params(&self) -> Option<&SinusoidParams> {
        self.fit.as_ref().map(|f| &f.params)
    }
}

fn relative_gap(a: f64, reference: f64) -> f64 {
    ((a - reference) / reference).abs()
}

pub fn estimate_parameters(
    input: &TimeSeries,
    config: &PipelineConfig,
) -> Result<EstimationReport> {
    let screening = screen(input, config.far)?;
    if screening.verdict == Verdict::Noise && !config.bypass_screening {
        return Ok(EstimationReport {
            screening,
            fit: None,
        });
    }

    let dt = input.dt();
    let n = input.len();
    let smoothed = moving_average(input, config.ma_k)?;
    let amplitude_range = amplitude_estimate(&smoothed);

    let spectrum = dft_magnitude(input);
    let data_acf = circular_acf(input, n / 2)?;
    let ma_crossings = upward_crossings(&smoothed);

    let fft_hz = spectrum
        .peak_bin()
        .filter(|&m| spectrum.magnitudes()[m] > 0.0)
        .map(|m| spectrum.frequency(m));
    let acf_arccos_hz = data_acf
        .get(config.acf_check_lag)
        .and_then(|r| frequency_from_acf(r, config.acf_check_lag).ok())
        .filter(|&f| f > 0.0)
        .map(|f| f / dt);
    let acf_period_hz = data_acf.period_lag().map(|lag| 1.0 / (lag as f64 * dt));
    let ma_period_hz = ma_crossings
        .windows(2)
        .next()
        .map(|w| w[1] - w[0])
        .filter(|&p| p > 0.0)
        .map(|p| 1.0 / p);
    let checks = FrequencyChecks {
        fft_hz,
        acf_arccos_hz,
        acf_period_hz,
        ma_period_hz,
    };

    let (frequency_hz, frequency_source) = [
        (fft_hz, FrequencySource::Fft),
        (acf_period_hz, FrequencySource::AcfPeriod),
        (acf_arccos_hz, FrequencySource::AcfArccos),
        (ma_period_hz, FrequencySource::MaPeriod),
    ]
    .into_iter()
    .find_map(|(f, source)| f.map(|f| (f, source)))
    .ok_or(Error::InvalidParameter {
        name: "frequency_hz",
        value: 0.0,
    })?;

    let mut warnings = Vec::new();
    for (name, reading) in [
        ("fft", fft_hz),
        ("acf_period", acf_period_hz),
        ("acf_arccos", acf_arccos_hz),
        ("ma_period", ma_period_hz),
    ] {
        if let Some(f) = reading.filter(|_| name != frequency_source.as_str()) {
            if relative_gap(f, frequency_hz) > FREQUENCY_AGREEMENT {
                warnings.push(format!(
                    "{name} frequency {f:.6} Hz differs from {} estimate {frequency_hz:.6} Hz by more than {:.0}%",
                    frequency_source.as_str(),
                    FREQUENCY_AGREEMENT * 100.0
                ));
            }
        }
    }

    let amplitude_proj = amplitude_projection(input, frequency_hz).ok();
    let amplitude = match (config.amplitude_method, amplitude_proj) {
        (AmplitudeMethod::Projection, Some(a)) => a,
        (AmplitudeMethod::Projection, None) => {
            warnings.push(
                "amplitude projection is singular at this frequency; range estimate used".into(),
            );
            amplitude_range
        }
        (AmplitudeMethod::Range, _) => amplitude_range,
    };

    let period = 1.0 / frequency_hz;
    let t_2pi = detect_t2pi(&smoothed).ok();
    let crossover_phase = t_2pi
        .and_then(|t| phase_from_crossover(period, t).ok())
        .map(|p| wrap_phase(p.radians));

    let objective = PhaseObjective::new(input, amplitude, frequency_hz, config.objective_range)?;
    let phase_fit = match (config.warm_start, crossover_phase) {
        (true, Some(center)) => phase_grid_search_around(&objective, center),
        (true, None) => {
            warnings.push("warm start requested but no crossover found; full sweep used".into());
            phase_grid_search(&objective)
        }
        (false, _) => phase_grid_search(&objective),
    };

    let params = SinusoidParams::new(amplitude, frequency_hz, phase_fit.phase_rad)?;
    let mut phase_cross_checks = BTreeMap::new();
    if let Some(p) = crossover_phase {
        phase_cross_checks.insert("crossover".to_string(), p);
        if wrap_phase(p - params.phase_rad()).abs() > WARM_START_HALF_WIDTH {
            warnings.push(format!(
                "crossover phase {p:.4} rad differs from grid search {:.4} rad by more than 0.5 rad",
                params.phase_rad()
            ));
        }
    }

    let max_lag = config.max_lag.unwrap_or(n / 2).max(1);
    let model_acf = model_acf_full(&params.per_sample(dt), max_lag)?;

    Ok(EstimationReport {
        screening,
        fit: Some(Fit {
            delta_t: params.time_delay(),
            amplitude_method: config.amplitude_method,
            amplitude_range,
            amplitude_projection: amplitude_proj,
            params,
            frequency_source,
            frequency_checks: checks,
            t_2pi,
            objective_value: phase_fit.objective,
            objective_range: config.objective_range,
            phase_cross_checks,
            smoothing_k: config.ma_k,
            warnings,
            smoothed,
            spectrum,
            data_acf,
            model_acf,
        }),
    })
}
