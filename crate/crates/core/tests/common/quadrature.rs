//! Adaptive Simpson quadrature, used as an independent oracle for the
//! closed-form integrals.

fn simpson(fa: f64, fm: f64, fb: f64, a: f64, b: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(fa, flm, fm, a, m);
    let right = simpson(fm, frm, fb, m, b);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * eps {
        return left + right + delta / 15.0;
    }
    recurse(f, a, m, fa, flm, fm, left, eps / 2.0, depth - 1)
        + recurse(f, m, b, fm, frm, fb, right, eps / 2.0, depth - 1)
}

/// `∫_a^b f(x) dx` to roughly `eps` absolute error.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, eps: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let m = 0.5 * (a + b);
    let (fa, fm, fb) = (f(a), f(m), f(b));
    let whole = simpson(fa, fm, fb, a, b);
    recurse(&f, a, b, fa, fm, fb, whole, eps, 48)
}

#[test]
fn integrates_known_functions() {
    let pi = std::f64::consts::PI;
    assert!((integrate(f64::sin, 0.0, pi, 1e-13) - 2.0).abs() < 1e-12);
    assert!((integrate(|x| x * x, 0.0, 3.0, 1e-13) - 9.0).abs() < 1e-12);
    assert!((integrate(f64::exp, -1.0, 1.0, 1e-13) - (1f64.exp() - (-1f64).exp())).abs() < 1e-12);
}
