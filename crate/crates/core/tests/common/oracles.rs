//! Closed-form integrals against numeric quadrature over random draws.
//!
//! Each function returns the largest error seen, relative to
//! `max(1, |closed form|)`.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sinest::acf::{
    model_acf_full, model_acf_reduced, model_acf_unnormalized, normalizing_constant,
    sine_product_integral, IntegralParams,
};
use sinest::SinusoidParams;

use super::quadrature::integrate;

pub const QUAD_EPS: f64 = 1e-13;
pub const ORACLE_TOLERANCE: f64 = 1e-9;

fn rel(closed: f64, numeric: f64) -> f64 {
    (closed - numeric).abs() / closed.abs().max(1.0)
}

fn random_params(rng: &mut ChaCha8Rng) -> SinusoidParams {
    SinusoidParams::new(
        rng.random_range(0.1..5.0),
        rng.random_range(0.01..0.45),
        rng.random_range(-PI..PI),
    )
    .unwrap()
}

/// `∫_u^v sin(ax + b)·sin(ax + d) dx`.
pub fn sine_product_max_error(draws: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..draws)
        .map(|_| {
            let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            let u = rng.random_range(-5.0..5.0);
            let p = IntegralParams {
                a: sign * rng.random_range(0.05..3.0),
                b: rng.random_range(-PI..PI),
                d: rng.random_range(-PI..PI),
                u,
                v: u + rng.random_range(0.0..10.0),
            };
            let numeric = integrate(
                |x| (p.a * x + p.b).sin() * (p.a * x + p.d).sin(),
                p.u,
                p.v,
                QUAD_EPS,
            );
            rel(sine_product_integral(&p).unwrap(), numeric)
        })
        .fold(0.0, f64::max)
}

/// Full model: `(1/2π)∫_0^{2π} A sin(ωt+φ)·A sin(ωt+ωτ+φ) dt`, both raw and
/// scaled by `C` against the normalized series.
pub fn full_model_max_error(draws: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..draws)
        .map(|_| {
            let p = random_params(&mut rng);
            let lag = rng.random_range(0..=50usize);
            let (a, w, phi) = (p.amplitude(), p.omega(), p.phase_rad());
            let tau = lag as f64;
            let numeric = integrate(
                |t| a * (w * t + phi).sin() * a * (w * t + w * tau + phi).sin(),
                0.0,
                TAU,
                QUAD_EPS,
            ) / TAU;
            let c = normalizing_constant(&p).unwrap();
            let normalized = model_acf_full(&p, lag.max(1)).unwrap().values()[lag];
            rel(model_acf_unnormalized(&p, tau), numeric).max(rel(normalized, c * numeric))
        })
        .fold(0.0, f64::max)
}

/// Reduced model: averaging over the phase with sine and with cosine
/// integrands both give `(A²/2)·cos(ωτ)`.
pub fn reduced_model_max_error(draws: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..draws)
        .map(|_| {
            let p = random_params(&mut rng);
            let lag = rng.random_range(1..=50usize);
            let t = rng.random_range(-20.0..20.0);
            let (a, w) = (p.amplitude(), p.omega());
            let tau = lag as f64;
            let closed = a * a / 2.0 * model_acf_reduced(&p, lag).unwrap().values()[lag];
            let sine = integrate(
                |v| a * (w * t + v).sin() * a * (w * t + w * tau + v).sin(),
                0.0,
                TAU,
                QUAD_EPS,
            ) / TAU;
            let cosine = integrate(
                |v| a * (w * t + v).cos() * a * (w * t + w * tau + v).cos(),
                0.0,
                TAU,
                QUAD_EPS,
            ) / TAU;
            rel(closed, sine).max(rel(closed, cosine))
        })
        .fold(0.0, f64::max)
}
