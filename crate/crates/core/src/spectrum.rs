//! Direct discrete Fourier transform and fundamental-frequency selection.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::TimeSeries;

/// One-sided magnitude spectrum, bins `0..=N/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    df: f64,
    magnitudes: Vec<f64>,
}

impl Spectrum {
    pub fn new(df: f64, magnitudes: Vec<f64>) -> Self {
        Self { df, magnitudes }
    }

    /// Bin width `1/(N·dt)` in Hz.
    pub fn df(&self) -> f64 {
        self.df
    }

    pub fn magnitudes(&self) -> &[f64] {
        &self.magnitudes
    }

    pub fn len(&self) -> usize {
        self.magnitudes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.magnitudes.is_empty()
    }

    pub fn frequency(&self, bin: usize) -> f64 {
        bin as f64 * self.df
    }

    /// Highest non-DC bin; the lowest index wins a tie.
    pub fn peak_bin(&self) -> Option<usize> {
        let mut best: Option<(usize, f64)> = None;
        for (m, &mag) in self.magnitudes.iter().enumerate().skip(1) {
            if best.is_none_or(|(_, b)| mag > b) {
                best = Some((m, mag));
            }
        }
        best.map(|(m, _)| m)
    }
}

/// Full complex DFT `X_m = Σ x_n·e^{−i2πmn/N}`, `m = 0..N`.
///
/// Twiddles come from a table indexed by `(m·n) mod N`, so every bin uses
/// exactly the same roots of unity.
pub fn dft(samples: &[f64]) -> Vec<Complex64> {
    let n = samples.len();
    if n == 0 {
        return Vec::new();
    }
    let twiddles: Vec<Complex64> = (0..n)
        .map(|j| Complex64::from_polar(1.0, -TAU * j as f64 / n as f64))
        .collect();
    (0..n)
        .map(|m| {
            samples
                .iter()
                .enumerate()
                .map(|(i, &x)| twiddles[(m * i) % n] * x)
                .sum()
        })
        .collect()
}

pub fn dft_magnitude(input: &TimeSeries) -> Spectrum {
    spectrum_of(input.samples(), input.dt())
}

/// Magnitude spectrum of the record zero-padded to `padded_len` samples.
/// Lengths at or below the record length leave it unpadded.
pub fn dft_magnitude_padded(input: &TimeSeries, padded_len: usize) -> Spectrum {
    if padded_len <= input.len() {
        return dft_magnitude(input);
    }
    let mut x = input.samples().to_vec();
    x.resize(padded_len, 0.0);
    spectrum_of(&x, input.dt())
}

fn spectrum_of(x: &[f64], dt: f64) -> Spectrum {
    let n = x.len();
    let full = dft(x);
    let magnitudes = full[..=n / 2].iter().map(|c| c.norm()).collect();
    Spectrum {
        df: 1.0 / (n as f64 * dt),
        magnitudes,
    }
}

/// Frequency of the largest non-DC bin.
pub fn fundamental_frequency(spec: &Spectrum) -> Result<f64> {
    if spec.len() < 2 {
        return Err(Error::SpectrumTooShort(spec.len()));
    }
    let bin = spec.peak_bin().expect("at least one non-DC bin");
    Ok(spec.frequency(bin))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{synthesize, NoiseSpec, SinusoidParams};

    #[test]
    fn constant_is_dc_only() {
        let ts = TimeSeries::new(0.0, 1.0, vec![3.0; 64]).unwrap();
        let s = dft_magnitude(&ts);
        assert_eq!(s.len(), 33);
        assert!((s.magnitudes()[0] - 192.0).abs() < 1e-9);
        for &m in &s.magnitudes()[1..] {
            assert!(m / 192.0 < 1e-9);
        }
    }

    #[test]
    fn on_grid_sinusoid_peaks_at_bin_five() {
        let p = SinusoidParams::new(2.0, 0.05, 0.6109).unwrap();
        let ts = synthesize(&p, &NoiseSpec::none(), 100, 1.0, 0.0).unwrap();
        let s = dft_magnitude(&ts);
        assert_eq!(s.len(), 51);
        assert!((s.df() - 0.01).abs() < 1e-15);
        assert_eq!(s.peak_bin(), Some(5));
        assert!((fundamental_frequency(&s).unwrap() - 0.05).abs() < 1e-15);
    }

    #[test]
    fn single_bin_and_ties() {
        let s = Spectrum::new(0.25, vec![9.0, 0.0, 0.0, 4.0, 0.0]);
        assert_eq!(fundamental_frequency(&s).unwrap(), 0.75);
        let tie = Spectrum::new(1.0, vec![0.0, 1.0, 2.0, 2.0]);
        assert_eq!(tie.peak_bin(), Some(2));
        assert!(fundamental_frequency(&Spectrum::new(1.0, vec![1.0])).is_err());
    }

    #[test]
    fn parseval() {
        let x: Vec<f64> = (0..37)
            .map(|i| ((i * i) as f64 * 0.31).sin() + 0.2)
            .collect();
        let energy: f64 = x.iter().map(|v| v * v).sum();
        let spec_energy: f64 = dft(&x).iter().map(|c| c.norm_sqr()).sum();
        assert!((spec_energy - 37.0 * energy).abs() / spec_energy < 1e-9);
    }

    #[test]
    fn rotation_leaves_magnitudes_unchanged() {
        let x: Vec<f64> = (0..50)
            .map(|i| (i as f64 * 0.9).cos() * (i as f64).sqrt())
            .collect();
        let base = dft_magnitude(&TimeSeries::new(0.0, 1.0, x.clone()).unwrap());
        for shift in [1, 7, 25, 49] {
            let mut r = x.clone();
            r.rotate_left(shift);
            let rot = dft_magnitude(&TimeSeries::new(0.0, 1.0, r).unwrap());
            for (a, b) in base.magnitudes().iter().zip(rot.magnitudes()) {
                assert!((a - b).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn padding_refines_bin_width() {
        let p = SinusoidParams::new(1.0, 0.0625, 0.0).unwrap();
        let ts = synthesize(&p, &NoiseSpec::none(), 100, 1.0, 0.0).unwrap();
        let s = dft_magnitude_padded(&ts, 400);
        assert_eq!(s.len(), 201);
        assert!((s.df() - 0.0025).abs() < 1e-15);
        assert!((fundamental_frequency(&s).unwrap() - 0.0625).abs() <= 0.0025);
        assert_eq!(dft_magnitude_padded(&ts, 50), dft_magnitude(&ts));
    }
}
