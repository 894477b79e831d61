//! JSON report schema and plot-ready CSV series.
//!
//! Field names carry their units. Field order is the struct order below and
//! is part of the output contract.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use super::io::{csv_bytes, series_csv, write_atomic, CliError};
use crate::acf::{circular_acf, model_acf_reduced, AcfSeries};
use crate::estimate::{EstimationReport, Fit, ObjectiveRange, PipelineConfig};
use crate::model::TimeSeries;
use crate::screening::{acf_bounds, FailedGate, ScreeningDecision, Verdict};
use crate::spectrum::Spectrum;

pub const REPORT_SCHEMA: &str = "sinest.report/1";
pub const SCREEN_SCHEMA: &str = "sinest.screen/1";

pub const ACF_HEADER: [&str; 4] = ["lag", "acf", "lower_bound", "upper_bound"];
pub const MODEL_ACF_HEADER: [&str; 3] = ["lag", "model_full", "model_reduced"];
pub const SPECTRUM_HEADER: [&str; 3] = ["bin", "frequency_hz", "magnitude"];
pub const SMOOTHED_HEADER: [&str; 3] = ["t", "t_centered", "value"];

pub fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Signal => "signal",
        Verdict::Noise => "noise",
    }
}

pub fn gate_str(g: FailedGate) -> &'static str {
    match g {
        FailedGate::None => "none",
        FailedGate::Gate1 => "gate1",
        FailedGate::Gate2 => "gate2",
    }
}

pub fn range_str(r: ObjectiveRange) -> &'static str {
    match r {
        ObjectiveRange::OnePeriod => "one_period",
        ObjectiveRange::FullRecord => "full_record",
    }
}

#[derive(Debug, Serialize)]
pub struct InputJson {
    pub sample_count: usize,
    pub start_time_s: f64,
    pub dt_s: f64,
}

impl InputJson {
    pub fn of(series: &TimeSeries) -> Self {
        Self {
            sample_count: series.len(),
            start_time_s: series.start_time(),
            dt_s: series.dt(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ConfigJson {
    pub far: f64,
    pub ma_k: usize,
    pub objective_range: &'static str,
    pub warm_start: bool,
    pub max_lag: Option<usize>,
    pub bypass_screening: bool,
    pub acf_check_lag: usize,
    pub amplitude_method: &'static str,
}

impl From<&PipelineConfig> for ConfigJson {
    fn from(c: &PipelineConfig) -> Self {
        Self {
            far: c.far,
            ma_k: c.ma_k,
            objective_range: range_str(c.objective_range),
            warm_start: c.warm_start,
            max_lag: c.max_lag,
            bypass_screening: c.bypass_screening,
            acf_check_lag: c.acf_check_lag,
            amplitude_method: c.amplitude_method.as_str(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ScreeningJson {
    pub verdict: &'static str,
    pub gate_failed: &'static str,
    pub far: f64,
    pub runs_statistic_z: f64,
    pub runs_count: usize,
    pub n_above: usize,
    pub n_below: usize,
    pub acf_bound: f64,
    pub acf_exceedances: usize,
    pub required_exceedances: usize,
}

impl From<&ScreeningDecision> for ScreeningJson {
    fn from(d: &ScreeningDecision) -> Self {
        Self {
            verdict: verdict_str(d.verdict),
            gate_failed: gate_str(d.gate_failed),
            far: d.far,
            runs_statistic_z: d.runs_statistic,
            runs_count: d.runs_count,
            n_above: d.n_above,
            n_below: d.n_below,
            acf_bound: d.acf_bound,
            acf_exceedances: d.acf_exceedances,
            required_exceedances: d.required_exceedances,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct FrequencyChecksJson {
    pub fft_hz: Option<f64>,
    pub acf_arccos_hz: Option<f64>,
    pub acf_period_hz: Option<f64>,
    pub ma_period_hz: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct AmplitudeChecksJson {
    pub range: f64,
    pub projection: Option<f64>,
}

#[derive(Debug, Serialize)]
pub struct EstimateJson {
    pub amplitude: f64,
    pub amplitude_method: &'static str,
    pub amplitude_checks: AmplitudeChecksJson,
    pub frequency_hz: f64,
    pub omega_rad_per_s: f64,
    pub period_s: f64,
    pub phase_rad: f64,
    pub phase_deg: f64,
    pub delta_t_s: f64,
    pub t_2pi_s: Option<f64>,
    pub objective_value: f64,
    pub objective_range: &'static str,
    pub frequency_source: &'static str,
    pub frequency_checks: FrequencyChecksJson,
    pub phase_cross_checks_rad: BTreeMap<String, f64>,
    pub smoothing_k: usize,
    pub warnings: Vec<String>,
}

impl From<&Fit> for EstimateJson {
    fn from(f: &Fit) -> Self {
        let p = &f.params;
        Self {
            amplitude: p.amplitude(),
            amplitude_method: f.amplitude_method.as_str(),
            amplitude_checks: AmplitudeChecksJson {
                range: f.amplitude_range,
                projection: f.amplitude_projection,
            },
            frequency_hz: p.frequency_hz(),
            omega_rad_per_s: p.omega(),
            period_s: p.period(),
            phase_rad: p.phase_rad(),
            phase_deg: p.phase_rad().to_degrees(),
            delta_t_s: f.delta_t,
            t_2pi_s: f.t_2pi,
            objective_value: f.objective_value,
            objective_range: range_str(f.objective_range),
            frequency_source: f.frequency_source.as_str(),
            frequency_checks: FrequencyChecksJson {
                fft_hz: f.frequency_checks.fft_hz,
                acf_arccos_hz: f.frequency_checks.acf_arccos_hz,
                acf_period_hz: f.frequency_checks.acf_period_hz,
                ma_period_hz: f.frequency_checks.ma_period_hz,
            },
            phase_cross_checks_rad: f.phase_cross_checks.clone(),
            smoothing_k: f.smoothing_k,
            warnings: f.warnings.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ReportJson {
    pub schema: &'static str,
    pub input: InputJson,
    pub config: ConfigJson,
    pub screening: ScreeningJson,
    /// `null` when the record was rejected as noise.
    pub estimate: Option<EstimateJson>,
}

impl ReportJson {
    pub fn new(input: &TimeSeries, config: &PipelineConfig, report: &EstimationReport) -> Self {
        Self {
            schema: REPORT_SCHEMA,
            input: InputJson::of(input),
            config: config.into(),
            screening: (&report.screening).into(),
            estimate: report.fit.as_ref().map(EstimateJson::from),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ScreenJson {
    pub schema: &'static str,
    pub input: InputJson,
    pub screening: ScreeningJson,
}

pub fn to_json_bytes<T: Serialize>(value: &T) -> Result<Vec<u8>, CliError> {
    let mut bytes = serde_json::to_vec_pretty(value)?;
    bytes.push(b'\n');
    Ok(bytes)
}

/// `lag,acf,lower_bound,upper_bound`; bounds are blank when the record is
/// too short for them.
pub fn acf_csv(acf: &AcfSeries, bound: Option<f64>) -> Result<Vec<u8>, CliError> {
    let (lo, hi) = match bound {
        Some(b) => ((-b).to_string(), b.to_string()),
        None => (String::new(), String::new()),
    };
    csv_bytes(
        &ACF_HEADER,
        acf.values()
            .iter()
            .enumerate()
            .map(|(lag, v)| [lag.to_string(), v.to_string(), lo.clone(), hi.clone()]),
    )
}

pub fn spectrum_csv(spec: &Spectrum) -> Result<Vec<u8>, CliError> {
    csv_bytes(
        &SPECTRUM_HEADER,
        spec.magnitudes()
            .iter()
            .enumerate()
            .map(|(m, v)| [m.to_string(), spec.frequency(m).to_string(), v.to_string()]),
    )
}

pub fn model_acf_csv(full: &AcfSeries, reduced: &AcfSeries) -> Result<Vec<u8>, CliError> {
    csv_bytes(
        &MODEL_ACF_HEADER,
        full.values()
            .iter()
            .zip(reduced.values())
            .enumerate()
            .map(|(lag, (f, r))| [lag.to_string(), f.to_string(), r.to_string()]),
    )
}

/// Bound for a record of `n` samples, if it is long enough to screen.
pub fn optional_bound(n: usize, far: f64) -> Result<Option<f64>, CliError> {
    match acf_bounds(n, far) {
        Ok(b) => Ok(Some(b)),
        Err(crate::Error::TooFewSamples { .. }) => Ok(None),
        Err(e) => Err(e.into()),
    }
}

/// Writes raw, smoothed, data-ACF, model-ACF and spectrum series into `dir`.
pub fn write_plot_data(
    dir: &Path,
    input: &TimeSeries,
    config: &PipelineConfig,
    report: &EstimationReport,
) -> Result<Vec<String>, CliError> {
    let mut written = vec!["raw.csv".to_string()];
    write_atomic(&dir.join("raw.csv"), &series_csv(input)?)?;

    let bound = optional_bound(input.len(), config.far)?;
    let data_acf = match &report.fit {
        Some(fit) => fit.data_acf.clone(),
        None => circular_acf(input, input.len() / 2)?,
    };
    write_atomic(&dir.join("acf.csv"), &acf_csv(&data_acf, bound)?)?;
    written.push("acf.csv".into());

    if let Some(fit) = &report.fit {
        let s = &fit.smoothed;
        let smoothed = csv_bytes(
            &SMOOTHED_HEADER,
            s.times()
                .zip(s.centered_times())
                .zip(s.samples())
                .map(|((t, tc), v)| [t.to_string(), tc.to_string(), v.to_string()]),
        )?;
        write_atomic(&dir.join("smoothed.csv"), &smoothed)?;
        let reduced =
            model_acf_reduced(&fit.params.per_sample(input.dt()), fit.model_acf.max_lag())?;
        write_atomic(
            &dir.join("model_acf.csv"),
            &model_acf_csv(&fit.model_acf, &reduced)?,
        )?;
        write_atomic(&dir.join("spectrum.csv"), &spectrum_csv(&fit.spectrum)?)?;
        written.extend([
            "smoothed.csv".into(),
            "model_acf.csv".into(),
            "spectrum.csv".into(),
        ]);
    }
    Ok(written)
}
