//! Turning-point location and quadrature of sqrt-type integrands between
//! simple zeros.
//!
//! The sine substitution t = mid + halfwidth*sin(theta) absorbs square-root
//! endpoint singularities; Gauss-Legendre in theta then converges
//! geometrically, and the order is doubled until two successive orders agree.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Scan coordinate for root location; uniform sampling happens in the
/// compactified variable.
#[derive(Debug, Clone, Copy)]
pub enum ScanDomain {
    /// Uniform in t over [lo, hi].
    Line { lo: f64, hi: f64 },
    /// Uniform in ln t over [ln lo, ln hi]; t > 0.
    LogLine { lo: f64, hi: f64 },
}

impl ScanDomain {
    fn point(&self, frac: f64) -> f64 {
        match *self {
            ScanDomain::Line { lo, hi } => lo + (hi - lo) * frac,
            ScanDomain::LogLine { lo, hi } => {
                let (a, b) = (lo.ln(), hi.ln());
                (a + (b - a) * frac).exp()
            }
        }
    }
}

/// A turning-point pair with the non-negative integrand between them.
#[derive(Debug, Clone, Copy)]
pub struct Bracket {
    pub a_left: f64,
    pub a_right: f64,
}

pub const SCAN_POINTS: usize = 4000;
pub const ROOT_TOL: f64 = 1e-13;

/// Locate all sign-change brackets of f on the domain, refined by bisection.
pub fn find_turning_points(f: &dyn Fn(f64) -> f64, domain: ScanDomain) -> Result<Vec<Bracket>> {
    find_turning_points_scan(f, domain, SCAN_POINTS)
}

pub fn find_turning_points_scan(
    f: &dyn Fn(f64) -> f64,
    domain: ScanDomain,
    scan_points: usize,
) -> Result<Vec<Bracket>> {
    let mut roots = Vec::new();
    let mut any_positive = false;
    let mut prev_t = domain.point(0.0);
    let mut prev_v = f(prev_t);
    if prev_v > 0.0 {
        any_positive = true;
    }
    for i in 1..=scan_points {
        let t = domain.point(i as f64 / scan_points as f64);
        let v = f(t);
        if v > 0.0 {
            any_positive = true;
        }
        if prev_v == 0.0 {
            roots.push(prev_t);
        } else if prev_v * v < 0.0 {
            roots.push(bisect(f, prev_t, t));
        }
        prev_t = t;
        prev_v = v;
    }
    if prev_v == 0.0 {
        roots.push(prev_t);
    }
    if roots.is_empty() {
        return Err(Error::NoBracket);
    }
    if roots.len() % 2 != 0 {
        return Err(Error::InconsistentScan(roots.len()));
    }
    if !any_positive {
        return Err(Error::NoBracket);
    }
    Ok(roots
        .chunks(2)
        .map(|pair| Bracket { a_left: pair[0], a_right: pair[1] })
        .collect())
}

fn bisect(f: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    loop {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= ROOT_TOL || mid == lo || mid == hi {
            return mid;
        }
        let fmid = f(mid);
        if flo * fmid <= 0.0 {
            hi = mid;
        } else {
            lo = mid;
            flo = fmid;
        }
    }
}

// Gauss-Legendre nodes and weights on [-1, 1], cached per order.
fn gauss_legendre(n: usize) -> Arc<(Vec<f64>, Vec<f64>)> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<(Vec<f64>, Vec<f64>)>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&n) {
        return v.clone();
    }
    let computed = Arc::new(compute_gauss_legendre(n));
    cache.lock().unwrap().insert(n, computed.clone());
    computed
}

fn compute_gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = (n + 1) / 2;
    for i in 0..m {
        // Tricomi initial guess, then Newton on P_n
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_and_deriv(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_and_deriv(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre_and_deriv(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

const GL_START_ORDER: usize = 16;
pub const GL_MAX_ORDER: usize = 4096;
const GL_AGREE_TOL: f64 = 1e-11;

/// Adaptive-order Gauss-Legendre over theta in (-pi/2, pi/2): doubles the
/// order until two successive orders agree to 1e-11 relative.
pub fn integrate_theta(g: &dyn Fn(f64) -> f64) -> Result<f64> {
    let mut order = GL_START_ORDER;
    let mut prev = gl_theta_pass(g, order);
    loop {
        order *= 2;
        if order > GL_MAX_ORDER {
            return Err(Error::QuadratureNoConverge { order, delta: f64::NAN });
        }
        let cur = gl_theta_pass(g, order);
        let delta = (cur - prev).abs();
        // an integral at roundoff scale is a numerical zero here
        if delta <= GL_AGREE_TOL * cur.abs() || (cur.abs() <= 1e-12 && delta <= 1e-13) {
            return Ok(cur);
        }
        if order == GL_MAX_ORDER && delta > GL_AGREE_TOL * cur.abs().max(1e-30) {
            return Err(Error::QuadratureNoConverge { order, delta });
        }
        prev = cur;
    }
}

fn gl_theta_pass(g: &dyn Fn(f64) -> f64, order: usize) -> f64 {
    let gl = gauss_legendre(order);
    let half = std::f64::consts::FRAC_PI_2;
    let mut acc = 0.0;
    for (x, w) in gl.0.iter().zip(gl.1.iter()) {
        acc += w * g(half * x);
    }
    acc * half
}

/// Integral of sqrt(f(t)) * measure(t) over the bracket.
pub fn integrate_sqrt_bracket(
    bracket: Bracket,
    f: &dyn Fn(f64) -> f64,
    measure: &dyn Fn(f64) -> f64,
) -> Result<f64> {
    let mid = 0.5 * (bracket.a_left + bracket.a_right);
    let hw = 0.5 * (bracket.a_right - bracket.a_left);
    if hw <= 0.0 {
        return Ok(0.0);
    }
    let mut bad: Option<(f64, f64)> = None;
    let g = |theta: f64| -> f64 {
        let t = mid + hw * theta.sin();
        let v = f(t);
        if v < -1e-12 {
            // roundoff should not drive f this negative inside the bracket
            return f64::NAN;
        }
        v.max(0.0).sqrt() * measure(t) * hw * theta.cos()
    };
    let result = integrate_theta(&g);
    if let Ok(v) = result {
        if v.is_nan() {
            // locate the offending point for the error report
            for i in 0..=64 {
                let theta = -std::f64::consts::FRAC_PI_2
                    + std::f64::consts::PI * i as f64 / 64.0;
                let t = mid + hw * theta.sin();
                let fv = f(t);
                if fv < -1e-12 {
                    bad = Some((t, fv));
                    break;
                }
            }
            let (t, value) = bad.unwrap_or((mid, f64::NAN));
            return Err(Error::NegativeIntegrand { t, value });
        }
    }
    result
}

/// One-sided rule for a half-bracket: absorbs the sqrt zero at `zero_end`
/// only, with the plain s^2 substitution toward the interior split point.
pub fn integrate_sqrt_one_sided(
    zero_end: f64,
    interior_end: f64,
    f: &dyn Fn(f64) -> f64,
    measure: &dyn Fn(f64) -> f64,
) -> Result<f64> {
    let span = interior_end - zero_end;
    // t = zero_end + span s^2, s in (0, 1); dt = 2 span s ds
    let g = |theta: f64| -> f64 {
        // map theta in (-pi/2, pi/2) to s in (0, 1)
        let s = 0.5 * (theta.sin() + 1.0);
        let t = zero_end + span * s * s;
        let v = f(t).max(0.0);
        v.sqrt() * measure(t) * 2.0 * span.abs() * s * 0.5 * theta.cos()
    };
    integrate_theta(&g)
}

fn gl_line_pass(
    f: &dyn Fn(Complex64) -> Result<Complex64>,
    z0: Complex64,
    z1: Complex64,
    order: usize,
) -> Result<Complex64> {
    let mid = 0.5 * (z0 + z1);
    let half = 0.5 * (z1 - z0);
    let gl = gauss_legendre(order);
    let mut acc = Complex64::new(0.0, 0.0);
    for (x, w) in gl.0.iter().zip(gl.1.iter()) {
        acc += *w * f(mid + half * *x)?;
    }
    Ok(acc * half)
}

const LINE_MAX_ORDER: usize = 256;
const LINE_MAX_DEPTH: u32 = 34;

fn adaptive_segment(
    f: &dyn Fn(Complex64) -> Result<Complex64>,
    z0: Complex64,
    z1: Complex64,
    abs_tol: f64,
    depth: u32,
) -> Result<Complex64> {
    let mut order = 8;
    let mut prev = gl_line_pass(f, z0, z1, order)?;
    while order < LINE_MAX_ORDER {
        order *= 2;
        let cur = gl_line_pass(f, z0, z1, order)?;
        if (cur - prev).norm() <= abs_tol {
            return Ok(cur);
        }
        prev = cur;
    }
    if depth >= LINE_MAX_DEPTH {
        // segments keep shrinking onto one point: a singularity on the path
        let mid = 0.5 * (z0 + z1);
        return Err(Error::ContourNearSingularity { re: mid.re, im: mid.im });
    }
    let mid = 0.5 * (z0 + z1);
    let left = adaptive_segment(f, z0, mid, 0.5 * abs_tol, depth + 1)?;
    let right = adaptive_segment(f, mid, z1, 0.5 * abs_tol, depth + 1)?;
    Ok(left + right)
}

/// Adaptive Gauss-Legendre for a complex-valued integrand along the straight
/// segment from z0 to z1: order doubling plus recursive bisection, so poles
/// close to (but off) the path cost depth rather than order.
pub fn integrate_line_complex(
    f: &dyn Fn(Complex64) -> Result<Complex64>,
    z0: Complex64,
    z1: Complex64,
    rel_tol: f64,
) -> Result<Complex64> {
    let rough = gl_line_pass(f, z0, z1, 64)?;
    let abs_tol = rel_tol * rough.norm().max(1.0);
    adaptive_segment(f, z0, z1, abs_tol, 0)
}
