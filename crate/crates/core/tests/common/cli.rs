//! Drives the `sinest` binary.

use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

use super::golden::check_fixture;

pub fn sinest(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sinest"))
        .args(args)
        .current_dir(dir)
        .env_remove("SINEST_OUT_DIR")
        .output()
        .expect("spawn sinest")
}

pub fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Generated parameters of the noise-free round trip.
pub const ROUND_TRIP: (f64, f64, f64) = (2.0, 0.05, 0.6109);

#[derive(Debug)]
pub struct RoundTrip {
    pub amplitude: f64,
    pub frequency_hz: f64,
    pub phase_rad: f64,
}

/// `generate` then `estimate --plot-data` on noise-free data; every emitted
/// file is checked against its fixture.
pub fn golden_round_trip() -> Result<RoundTrip, String> {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let dir = tmp.path();
    let run = |args: &[&str], code: i32| -> Result<(), String> {
        let out = sinest(dir, args);
        if out.status.code() == Some(code) {
            Ok(())
        } else {
            Err(format!(
                "{args:?}: exit {:?}, stderr {}",
                out.status.code(),
                String::from_utf8_lossy(&out.stderr)
            ))
        }
    };
    run(&["generate", "--out", "clean.csv"], 0)?;
    run(
        &[
            "estimate",
            "clean.csv",
            "--out",
            "report.json",
            "--plot-data",
            "plot",
        ],
        0,
    )?;
    check_fixture("clean/generated.csv", &read(dir, "clean.csv"))?;
    check_fixture("clean/report.json", &read(dir, "report.json"))?;
    for name in ["raw", "smoothed", "acf", "model_acf", "spectrum"] {
        check_fixture(
            &format!("clean/plot/{name}.csv"),
            &read(dir, &format!("plot/{name}.csv")),
        )?;
    }

    let report: Value =
        serde_json::from_str(&read(dir, "report.json")).map_err(|e| e.to_string())?;
    let est = &report["estimate"];
    let num = |k: &str| {
        est[k]
            .as_f64()
            .ok_or_else(|| format!("estimate.{k} missing"))
    };
    Ok(RoundTrip {
        amplitude: num("amplitude")?,
        frequency_hz: num("frequency_hz")?,
        phase_rad: num("phase_rad")?,
    })
}
