//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 when screening judges the input to be noise,
//! 1 for every other failure.

pub mod io;
pub mod report;

use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::acf::circular_acf;
use crate::estimate::{estimate_parameters, AmplitudeMethod, ObjectiveRange, PipelineConfig};
use crate::model::{pure_noise, synthesize, NoiseSpec, SinusoidParams};
use crate::screening::{screen, Verdict, DEFAULT_FAR};
use crate::spectrum::{dft_magnitude_padded, fundamental_frequency};
use io::{read_series_csv, series_csv, write_atomic, CliError};
use report::{
    acf_csv, optional_bound, spectrum_csv, to_json_bytes, InputJson, ReportJson, ScreenJson,
};

/// Environment variable naming the directory for outputs without an explicit path.
pub const OUT_DIR_ENV: &str = "SINEST_OUT_DIR";

pub const EXIT_OK: u8 = 0;
pub const EXIT_ERROR: u8 = 1;
pub const EXIT_NOISE: u8 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "sinest",
    version,
    about = "Estimate amplitude, frequency and phase of a noisy sinusoid"
)]
pub struct Cli {
    /// Directory for outputs given without an explicit path.
    #[arg(long, global = true, env = OUT_DIR_ENV, default_value = ".")]
    pub out_dir: PathBuf,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a seeded synthetic `t,value` CSV.
    Generate(GenerateArgs),
    /// Run the full pipeline and write a JSON report.
    Estimate(EstimateArgs),
    /// Write the circular ACF with significance bounds.
    Acf(AcfArgs),
    /// Write the DFT magnitude spectrum.
    Spectrum(SpectrumArgs),
    /// Run the two-gate screen and write the decision.
    Screen(ScreenArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long, default_value_t = 2.0)]
    pub amplitude: f64,
    #[arg(long, default_value_t = 0.05)]
    pub frequency: f64,
    #[arg(long, default_value_t = 0.6109, allow_hyphen_values = true)]
    pub phase: f64,
    /// Standard deviation of the additive Gaussian noise.
    #[arg(long, default_value_t = 0.0)]
    pub sigma: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, short, default_value_t = 100)]
    pub n: usize,
    #[arg(long, default_value_t = 1.0)]
    pub dt: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    pub start: f64,
    /// Emit noise only, without the sinusoid.
    #[arg(long)]
    pub no_signal: bool,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RangeArg {
    OnePeriod,
    FullRecord,
}

impl From<RangeArg> for ObjectiveRange {
    fn from(r: RangeArg) -> Self {
        match r {
            RangeArg::OnePeriod => ObjectiveRange::OnePeriod,
            RangeArg::FullRecord => ObjectiveRange::FullRecord,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AmplitudeArg {
    Projection,
    Range,
}

impl From<AmplitudeArg> for AmplitudeMethod {
    fn from(a: AmplitudeArg) -> Self {
        match a {
            AmplitudeArg::Projection => AmplitudeMethod::Projection,
            AmplitudeArg::Range => AmplitudeMethod::Range,
        }
    }
}

#[derive(Debug, Args)]
pub struct PipelineArgs {
    /// False alarm rate for both screening gates.
    #[arg(long, default_value_t = DEFAULT_FAR)]
    pub far: f64,
    /// Moving-average window length.
    #[arg(long, default_value_t = 5)]
    pub ma_k: usize,
    #[arg(long, value_enum, default_value_t = RangeArg::OnePeriod)]
    pub objective_range: RangeArg,
    /// Start the phase sweep around the crossover estimate.
    #[arg(long)]
    pub warm_start: bool,
    /// Last lag of emitted ACF series (default depends on the command).
    #[arg(long)]
    pub max_lag: Option<usize>,
    /// Fit the record even if screening rejects it.
    #[arg(long)]
    pub bypass_screening: bool,
    /// Lag used by the arccosine frequency cross-check.
    #[arg(long, default_value_t = 2)]
    pub acf_lag: usize,
    #[arg(long, value_enum, default_value_t = AmplitudeArg::Projection)]
    pub amplitude_method: AmplitudeArg,
}

impl PipelineArgs {
    pub fn config(&self) -> PipelineConfig {
        PipelineConfig {
            far: self.far,
            ma_k: self.ma_k,
            objective_range: self.objective_range.into(),
            warm_start: self.warm_start,
            max_lag: self.max_lag,
            bypass_screening: self.bypass_screening,
            acf_check_lag: self.acf_lag,
            amplitude_method: self.amplitude_method.into(),
        }
    }
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    pub input: PathBuf,
    #[command(flatten)]
    pub pipeline: PipelineArgs,
    /// Report path (default `<out-dir>/report.json`).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Also write raw, smoothed, ACF, model ACF and spectrum CSVs here.
    #[arg(long)]
    pub plot_data: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AcfArgs {
    pub input: PathBuf,
    /// Last lag (default N−1).
    #[arg(long)]
    pub max_lag: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_FAR)]
    pub far: f64,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SpectrumArgs {
    pub input: PathBuf,
    /// Zero-pad the record to this many samples before the DFT.
    #[arg(long)]
    pub pad_to: Option<usize>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ScreenArgs {
    pub input: PathBuf,
    #[arg(long, default_value_t = DEFAULT_FAR)]
    pub far: f64,
    /// Decision path (default `<out-dir>/screen.json`).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Also write the circular ACF to lag N/2 with the bounds used.
    #[arg(long)]
    pub acf_out: Option<PathBuf>,
}

fn resolve(out_dir: &Path, explicit: &Option<PathBuf>, default_name: &str) -> PathBuf {
    explicit
        .clone()
        .unwrap_or_else(|| out_dir.join(default_name))
}

/// Outcome of a successful command, mapped to an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Done,
    Noise,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Generate(a) => cmd_generate(&cli.out_dir, a),
        Command::Estimate(a) => cmd_estimate(&cli.out_dir, a),
        Command::Acf(a) => cmd_acf(&cli.out_dir, a),
        Command::Spectrum(a) => cmd_spectrum(&cli.out_dir, a),
        Command::Screen(a) => cmd_screen(&cli.out_dir, a),
    }
}

fn cmd_generate(out_dir: &Path, a: &GenerateArgs) -> Result<Outcome, CliError> {
    let series = if a.no_signal {
        pure_noise(a.sigma, a.seed, a.n, a.dt)?
    } else {
        let params = SinusoidParams::new(a.amplitude, a.frequency, a.phase)?;
        synthesize(
            &params,
            &NoiseSpec::gaussian(a.sigma, a.seed),
            a.n,
            a.dt,
            a.start,
        )?
    };
    let path = resolve(out_dir, &a.out, "generated.csv");
    write_atomic(&path, &series_csv(&series)?)?;
    println!("wrote {} samples to {}", series.len(), path.display());
    Ok(Outcome::Done)
}

fn cmd_estimate(out_dir: &Path, a: &EstimateArgs) -> Result<Outcome, CliError> {
    let input = read_series_csv(&a.input)?;
    let config = a.pipeline.config();
    let report = estimate_parameters(&input, &config)?;
    let path = resolve(out_dir, &a.out, "report.json");
    write_atomic(
        &path,
        &to_json_bytes(&ReportJson::new(&input, &config, &report))?,
    )?;
    if let Some(dir) = &a.plot_data {
        report::write_plot_data(dir, &input, &config, &report)?;
    }
    match &report.fit {
        Some(fit) => {
            let p = &fit.params;
            println!(
                "signal: A = {:.4}, f = {:.6} Hz, phi = {:.4} rad ({})",
                p.amplitude(),
                p.frequency_hz(),
                p.phase_rad(),
                path.display()
            );
            for w in &fit.warnings {
                eprintln!("warning: {w}");
            }
            Ok(Outcome::Done)
        }
        None => {
            println!(
                "noise: rejected at {} ({})",
                report::gate_str(report.screening.gate_failed),
                path.display()
            );
            Ok(Outcome::Noise)
        }
    }
}

fn cmd_acf(out_dir: &Path, a: &AcfArgs) -> Result<Outcome, CliError> {
    let input = read_series_csv(&a.input)?;
    let max_lag = a.max_lag.unwrap_or(input.len() - 1);
    let series = circular_acf(&input, max_lag)?;
    let bound = optional_bound(input.len(), a.far)?;
    let path = resolve(out_dir, &a.out, "acf.csv");
    write_atomic(&path, &acf_csv(&series, bound)?)?;
    println!("wrote lags 0..={max_lag} to {}", path.display());
    Ok(Outcome::Done)
}

fn cmd_spectrum(out_dir: &Path, a: &SpectrumArgs) -> Result<Outcome, CliError> {
    let input = read_series_csv(&a.input)?;
    let spec = dft_magnitude_padded(&input, a.pad_to.unwrap_or(0));
    let path = resolve(out_dir, &a.out, "spectrum.csv");
    write_atomic(&path, &spectrum_csv(&spec)?)?;
    println!(
        "peak at {} Hz ({})",
        fundamental_frequency(&spec)?,
        path.display()
    );
    Ok(Outcome::Done)
}

fn cmd_screen(out_dir: &Path, a: &ScreenArgs) -> Result<Outcome, CliError> {
    let input = read_series_csv(&a.input)?;
    let decision = screen(&input, a.far)?;
    let path = resolve(out_dir, &a.out, "screen.json");
    let doc = ScreenJson {
        schema: report::SCREEN_SCHEMA,
        input: InputJson::of(&input),
        screening: (&decision).into(),
    };
    write_atomic(&path, &to_json_bytes(&doc)?)?;
    if let Some(acf_path) = &a.acf_out {
        let series = circular_acf(&input, input.len() / 2)?;
        write_atomic(acf_path, &acf_csv(&series, Some(decision.acf_bound))?)?;
    }
    println!(
        "{} ({})",
        report::verdict_str(decision.verdict),
        path.display()
    );
    Ok(match decision.verdict {
        Verdict::Signal => Outcome::Done,
        Verdict::Noise => Outcome::Noise,
    })
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_ERROR } else { EXIT_OK });
        }
    };
    match run(&cli) {
        Ok(Outcome::Done) => ExitCode::from(EXIT_OK),
        Ok(Outcome::Noise) => ExitCode::from(EXIT_NOISE),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
