//! Shared oracle helpers for the integration tests, independent of the
//! implementation paths they check.

/// Tanh-sinh (double-exponential) quadrature over (a, b). Level 10 with the
/// 0.5^level step reaches ~1e-13 for integrable endpoint singularities.
pub fn tanh_sinh(f: &dyn Fn(f64) -> f64, a: f64, b: f64, level: u32) -> f64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let h = 0.5f64.powi(level as i32);
    let n_max = (6.0 / h).ceil() as i64;
    let mut acc = 0.0;
    for k in -n_max..=n_max {
        let t = k as f64 * h;
        let (s, c) = (t.sinh(), t.cosh());
        let u = (0.5 * std::f64::consts::PI * s).tanh();
        let w = 0.5 * std::f64::consts::PI * c
            / (0.5 * std::f64::consts::PI * s).cosh().powi(2);
        let x = mid + half * u;
        if x > a && x < b {
            let v = f(x);
            if v.is_finite() {
                acc += w * v;
            }
        }
    }
    acc * half * h
}

/// Central difference with one Richardson refinement (h and h/2).
pub fn richardson_diff(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let d1 = (f(x + h) - f(x - h)) / (2.0 * h);
    let d2 = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h;
    (4.0 * d2 - d1) / 3.0
}

/// Second central difference with one Richardson refinement.
pub fn second_diff(f: &dyn Fn(f64) -> f64, x: f64, h: f64) -> f64 {
    let d = |hh: f64| (f(x + hh) - 2.0 * f(x) + f(x - hh)) / (hh * hh);
    (4.0 * d(0.5 * h) - d(h)) / 3.0
}

#[allow(dead_code)]
pub fn assert_close(actual: f64, expected: f64, tol: f64, label: &str) {
    assert!(
        (actual - expected).abs() <= tol * expected.abs().max(1.0),
        "{label}: {actual} vs {expected}"
    );
}
