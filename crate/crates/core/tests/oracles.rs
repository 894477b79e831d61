//! Independent numeric oracles for the closed forms and the direct DFT.

mod common;

use std::f64::consts::{PI, TAU};

use common::oracles::{
    full_model_max_error, reduced_model_max_error, sine_product_max_error, ORACLE_TOLERANCE,
    QUAD_EPS,
};
use common::quadrature::integrate;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rustfft::FftPlanner;
use sinest::acf::{sine_product_integral, IntegralParams};
use sinest::smoothing::{moving_average, moving_average_gain};
use sinest::spectrum::dft;
use sinest::{NoiseSpec, SinusoidParams};

const DRAWS: usize = 200;

#[test]
fn sine_product_integral_matches_quadrature() {
    let err = sine_product_max_error(DRAWS, 11);
    assert!(err <= ORACLE_TOLERANCE, "max relative error {err:e}");
}

#[test]
fn full_model_matches_quadrature() {
    let err = full_model_max_error(DRAWS, 12);
    assert!(err <= ORACLE_TOLERANCE, "max relative error {err:e}");
}

#[test]
fn reduced_model_matches_quadrature() {
    let err = reduced_model_max_error(DRAWS, 13);
    assert!(err <= ORACLE_TOLERANCE, "max relative error {err:e}");
}

/// The `[0, T]` variant of the full model is the integral with `u = 0, v = T`.
#[test]
fn one_period_window_variant() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..100 {
        let (a, w, phi) = (
            rng.random_range(0.5..3.0),
            rng.random_range(0.05..1.5),
            rng.random_range(-PI..PI),
        );
        let tau: f64 = rng.random_range(0.0..30.0);
        let t_end: f64 = rng.random_range(1.0..40.0);
        let closed = a * a / (2.0 * t_end)
            * (t_end * (w * tau).cos()
                - (w * t_end).sin() * ((t_end + tau) * w + 2.0 * phi).cos() / w);
        let via_integral = a * a / t_end
            * sine_product_integral(&IntegralParams {
                a: w,
                b: phi,
                d: tau * w + phi,
                u: 0.0,
                v: t_end,
            })
            .unwrap();
        let numeric = integrate(
            |t| a * (w * t + phi).sin() * a * (w * t + w * tau + phi).sin(),
            0.0,
            t_end,
            QUAD_EPS,
        ) / t_end;
        assert!((closed - numeric).abs() <= ORACLE_TOLERANCE * closed.abs().max(1.0));
        assert!((via_integral - numeric).abs() <= ORACLE_TOLERANCE * closed.abs().max(1.0));
    }
}

#[test]
fn direct_dft_matches_rustfft() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut planner = FftPlanner::<f64>::new();
    for n in [2usize, 3, 7, 16, 60, 97, 100, 128, 255] {
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(-10.0..10.0)).collect();
        let mut buf: Vec<Complex64> = x.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        planner.plan_fft_forward(n).process(&mut buf);
        let ours = dft(&x);
        let scale = buf.iter().map(|c| c.norm()).fold(1.0, f64::max);
        for (m, (a, b)) in ours.iter().zip(&buf).enumerate() {
            assert!((a - b).norm() <= 1e-9 * scale, "n={n} bin {m}: {a} vs {b}");
        }
    }
}

/// MA-k of a pure sinusoid against the closed-form gain, read at the
/// group-delay corrected times.
#[test]
fn moving_average_gain_matches_direct_filtering() {
    for (k, f) in [(5usize, 0.05), (10, 0.05), (3, 0.13), (7, 0.021)] {
        let p = SinusoidParams::new(1.7, f, 0.4).unwrap();
        let x = sinest::model::synthesize(&p, &NoiseSpec::none(), 200, 1.0, 0.0).unwrap();
        let s = moving_average(&x, k).unwrap();
        let g = moving_average_gain(k, f, 1.0);
        for (tc, v) in s.centered_times().zip(s.samples()) {
            assert!((v - g * p.eval(tc)).abs() < 1e-6, "k={k} f={f} t={tc}");
        }
    }
}

#[test]
fn quadrature_over_a_full_period() {
    let a = 0.7;
    assert!((integrate(|x| (a * x).sin().powi(2), 0.0, TAU / a, QUAD_EPS) - PI / a).abs() < 1e-10);
}
