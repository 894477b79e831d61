//! CSV ingestion and atomic file output.

use std::io::Write;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::model::TimeSeries;

/// Relative tolerance on the spacing of input sample times.
pub const UNIFORM_DT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv { path: PathBuf, source: csv::Error },

    #[error("{path}: expected header `t,value`, found `{found}`")]
    Header { path: PathBuf, found: String },

    #[error("{path}: no data rows")]
    Empty { path: PathBuf },

    #[error("{path}: row {row}: {message}")]
    Row {
        path: PathBuf,
        row: usize,
        message: String,
    },

    #[error("{path}: row {row}: sample spacing {step} differs from {dt} (non-uniform sampling)")]
    NonUniform {
        path: PathBuf,
        row: usize,
        step: f64,
        dt: f64,
    },

    #[error(transparent)]
    Estimation(#[from] crate::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

/// Reads a `t,value` CSV with a header row into a uniformly sampled record.
///
/// Row numbers in errors count data rows from 1 (the header is row 0).
pub fn read_series_csv(path: &Path) -> Result<TimeSeries, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|source| CliError::Csv {
            path: path.into(),
            source,
        })?;

    let headers = reader
        .headers()
        .map_err(|source| CliError::Csv {
            path: path.into(),
            source,
        })?
        .clone();
    if headers.is_empty() || (headers.len() == 1 && headers[0].is_empty()) {
        return Err(CliError::Empty { path: path.into() });
    }
    if headers.len() != 2 || &headers[0] != "t" || &headers[1] != "value" {
        return Err(CliError::Header {
            path: path.into(),
            found: headers.iter().collect::<Vec<_>>().join(","),
        });
    }

    let mut times = Vec::new();
    let mut values = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 1;
        let record = record.map_err(|source| CliError::Csv {
            path: path.into(),
            source,
        })?;
        let field = |j: usize| -> Result<f64, CliError> {
            record[j]
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| CliError::Row {
                    path: path.into(),
                    row,
                    message: format!("`{}` is not a finite number", &record[j]),
                })
        };
        times.push(field(0)?);
        values.push(field(1)?);
    }
    if times.is_empty() {
        return Err(CliError::Empty { path: path.into() });
    }
    if times.len() < 2 {
        return Err(CliError::Row {
            path: path.into(),
            row: 1,
            message: "need at least two samples".into(),
        });
    }

    let n = times.len();
    let dt = (times[n - 1] - times[0]) / (n - 1) as f64;
    for (i, w) in times.windows(2).enumerate() {
        let step = w[1] - w[0];
        if !dt.is_finite() || dt <= 0.0 || (step - dt).abs() > UNIFORM_DT_TOLERANCE * dt.abs() {
            return Err(CliError::NonUniform {
                path: path.into(),
                row: i + 2,
                step,
                dt,
            });
        }
    }
    Ok(TimeSeries::new(times[0], dt, values)?)
}

/// Writes `bytes` to a temporary file beside `path` and renames it into place.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let io_err = |source| CliError::Io {
        path: path.into(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    std::fs::create_dir_all(dir).map_err(io_err)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io_err)?;
    tmp.write_all(bytes).map_err(io_err)?;
    tmp.flush().map_err(io_err)?;
    tmp.persist(path).map_err(|e| io_err(e.error))?;
    Ok(())
}

/// Builds a CSV document from a header and rows of pre-formatted cells.
pub fn csv_bytes<I, R>(header: &[&str], rows: I) -> Result<Vec<u8>, CliError>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    let wrap = |source| CliError::Csv {
        path: PathBuf::from("<memory>"),
        source,
    };
    w.write_record(header).map_err(wrap)?;
    for row in rows {
        w.write_record(row.into_iter().collect::<Vec<_>>())
            .map_err(wrap)?;
    }
    w.into_inner().map_err(|e| CliError::Io {
        path: PathBuf::from("<memory>"),
        source: e.into_error(),
    })
}

/// `t,value` CSV of a record, values at full round-trip precision.
pub fn series_csv(series: &TimeSeries) -> Result<Vec<u8>, CliError> {
    csv_bytes(
        &["t", "value"],
        series.points().map(|(t, x)| [t.to_string(), x.to_string()]),
    )
}
