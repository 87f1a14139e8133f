//! Confluent (1F1) and Gauss (2F1) hypergeometric functions for real
//! parameters and complex argument.
//!
//! 1F1 strategy: conjugation symmetry folds the argument into the closed
//! upper half plane; the Kummer transformation folds it into Re z >= 0;
//! the Maclaurin series covers |z| <= 40 (in double-double arithmetic when
//! the alternating-sign cancellation would cost more than ~4 digits) and
//! the large-argument expansion covers the rest.

use num_complex::Complex64;

use super::dd::{CDd, Dd};
use super::gamma::{gamma_fn, is_nonpositive_integer, rgamma};
use crate::error::{Error, Result};

const SERIES_MAX_TERMS: usize = 700;
const SERIES_RADIUS: f64 = 40.0;

type C = Complex64;

fn c_one() -> C {
    C::new(1.0, 0.0)
}

/// Neumaier-compensated complex accumulator.
#[derive(Clone, Copy, Default)]
struct CompSum {
    s: C,
    c: C,
}

impl CompSum {
    fn add(&mut self, v: C) {
        let t = C::new(self.s.re + v.re, self.s.im + v.im);
        let comp_re = if self.s.re.abs() >= v.re.abs() {
            (self.s.re - t.re) + v.re
        } else {
            (v.re - t.re) + self.s.re
        };
        let comp_im = if self.s.im.abs() >= v.im.abs() {
            (self.s.im - t.im) + v.im
        } else {
            (v.im - t.im) + self.s.im
        };
        self.c += C::new(comp_re, comp_im);
        self.s = t;
    }

    fn value(&self) -> C {
        self.s + self.c
    }
}

/// Terminating series when a is a non-positive integer: exact finite sum.
fn hyp1f1_terminating(a: f64, b: f64, z: C) -> Result<C> {
    let m = (-a).round() as usize;
    let mut term = c_one();
    let mut sum = CompSum::default();
    sum.add(term);
    for k in 0..m {
        let kf = k as f64;
        let denom = (b + kf) * (kf + 1.0);
        if denom == 0.0 {
            return Err(Error::InvalidParams(format!(
                "1F1 lower parameter {b} hits a non-positive integer before the series terminates"
            )));
        }
        term = term * z * ((a + kf) / denom);
        sum.add(term);
    }
    Ok(sum.value())
}

fn hyp1f1_series_f64(a: f64, b: f64, z: C) -> Result<C> {
    let mut term = c_one();
    let mut sum = CompSum::default();
    sum.add(term);
    let mut small_streak = 0;
    for k in 0..SERIES_MAX_TERMS {
        let kf = k as f64;
        term = term * z * ((a + kf) / ((b + kf) * (kf + 1.0)));
        sum.add(term);
        if term.norm() <= 1e-17 * sum.value().norm().max(f64::MIN_POSITIVE) {
            small_streak += 1;
            if small_streak >= 3 {
                return Ok(sum.value());
            }
        } else {
            small_streak = 0;
        }
    }
    Err(Error::NoConverge(format!("1F1 series at z = {z}")))
}

fn hyp1f1_series_dd(a: f64, b: f64, z: C) -> Result<C> {
    let zdd = CDd::new(z.re, z.im);
    let mut term = CDd::ONE;
    let mut sum = CDd::ONE;
    let mut small_streak = 0;
    for k in 0..SERIES_MAX_TERMS {
        let kf = Dd::from_f64(k as f64);
        // keep the ratio in double-double: f64 rounding here would be
        // amplified by the alternating-sign cancellation
        let num = Dd::from_f64(a).add(kf);
        let den = Dd::from_f64(b).add(kf).mul(kf.add(Dd::ONE));
        let ratio = num.div(den);
        term = term.mul(zdd).scale(ratio);
        sum = sum.add(term);
        if term.abs_est() <= 1e-26 * sum.abs_est().max(f64::MIN_POSITIVE) {
            small_streak += 1;
            if small_streak >= 3 {
                let (re, im) = sum.to_complex();
                return Ok(C::new(re, im));
            }
        } else {
            small_streak = 0;
        }
    }
    Err(Error::NoConverge(format!("1F1 double-double series at z = {z}")))
}

/// Large-|z| expansion, valid here for Re z >= 0, Im z >= 0 (phase in [0, pi/2]).
fn hyp1f1_asymptotic(a: f64, b: f64, z: C) -> Result<C> {
    let gb = gamma_fn(b)?;
    // dominant branch ~ e^z z^(a-b) / Gamma(a)
    let mut s1 = c_one();
    let mut term = c_one();
    let mut prev_mag = f64::INFINITY;
    for k in 0..60 {
        let kf = k as f64;
        term = term * ((b - a + kf) * (1.0 - a + kf) / (kf + 1.0)) / z;
        let mag = term.norm();
        if mag > prev_mag {
            break; // divergent tail reached
        }
        s1 += term;
        prev_mag = mag;
        if mag <= 1e-17 * s1.norm() {
            break;
        }
    }
    // recessive branch ~ e^(i pi a) z^(-a) / Gamma(b-a); upper sign since Im z >= 0
    let mut s2 = c_one();
    let mut term2 = c_one();
    let mut prev_mag2 = f64::INFINITY;
    for k in 0..60 {
        let kf = k as f64;
        term2 = term2 * ((a + kf) * (a - b + 1.0 + kf) / (kf + 1.0)) / (-z);
        let mag = term2.norm();
        if mag > prev_mag2 {
            break;
        }
        s2 += term2;
        prev_mag2 = mag;
        if mag <= 1e-17 * s2.norm() {
            break;
        }
    }
    let branch1 = z.exp() * z.powc(C::new(a - b, 0.0)) * rgamma(a) * s1;
    let phase = C::new(0.0, std::f64::consts::PI * a).exp();
    let branch2 = phase * z.powc(C::new(-a, 0.0)) * rgamma(b - a) * s2;
    Ok(gb * (branch1 + branch2))
}

/// Kummer's confluent hypergeometric function 1F1(a, b; z).
pub fn hyp1f1(a: f64, b: f64, z: C) -> Result<C> {
    if is_nonpositive_integer(a) && (!is_nonpositive_integer(b) || b < a) {
        // terminates before any zero of the (b)_k factor
        return hyp1f1_terminating(a, b, z);
    }
    if is_nonpositive_integer(b) {
        return Err(Error::InvalidParams(format!(
            "1F1 lower parameter {b} is a non-positive integer"
        )));
    }
    // conjugation symmetry: real parameters, so F(conj z) = conj F(z)
    if z.im < 0.0 {
        return Ok(hyp1f1(a, b, z.conj())?.conj());
    }
    // Kummer transformation moves the argument to the right half plane, where
    // the series terms stop alternating in the dominant direction
    if z.re < 0.0 {
        return Ok(z.exp() * hyp1f1(b - a, b, -z)?);
    }
    let r = z.norm();
    if r <= SERIES_RADIUS {
        // cancellation amplification is about e^(|z| - Re z)
        if r - z.re <= 6.0 {
            hyp1f1_series_f64(a, b, z)
        } else {
            hyp1f1_series_dd(a, b, z)
        }
    } else {
        hyp1f1_asymptotic(a, b, z)
    }
}

/// d/dz 1F1(a, b; z) = (a/b) 1F1(a+1, b+1; z).
pub fn hyp1f1_deriv(a: f64, b: f64, z: C) -> Result<C> {
    Ok((a / b) * hyp1f1(a + 1.0, b + 1.0, z)?)
}

fn hyp2f1_series(a: f64, b: f64, c: f64, z: C, max_terms: usize) -> Result<C> {
    let mut term = c_one();
    let mut sum = CompSum::default();
    sum.add(term);
    let mut small_streak = 0;
    for k in 0..max_terms {
        let kf = k as f64;
        let denom = (c + kf) * (kf + 1.0);
        if denom == 0.0 {
            return Err(Error::InvalidParams(format!(
                "2F1 lower parameter {c} hits a non-positive integer"
            )));
        }
        term = term * z * ((a + kf) * (b + kf) / denom);
        sum.add(term);
        if term.norm() <= 1e-17 * sum.value().norm().max(f64::MIN_POSITIVE) {
            small_streak += 1;
            if small_streak >= 3 {
                return Ok(sum.value());
            }
        } else {
            small_streak = 0;
        }
    }
    Err(Error::NoConverge(format!("2F1 series at z = {z}")))
}

fn hyp2f1_terminating(a: f64, b: f64, c: f64, z: C) -> Result<C> {
    let (first, second) = if is_nonpositive_integer(a) { (a, b) } else { (b, a) };
    let m = (-first).round() as usize;
    let mut term = c_one();
    let mut sum = CompSum::default();
    sum.add(term);
    for k in 0..m {
        let kf = k as f64;
        let denom = (c + kf) * (kf + 1.0);
        if denom == 0.0 {
            return Err(Error::InvalidParams(format!(
                "2F1 lower parameter {c} hits a non-positive integer before termination"
            )));
        }
        term = term * z * ((first + kf) * (second + kf) / denom);
        sum.add(term);
    }
    Ok(sum.value())
}

/// Gauss hypergeometric function 2F1(a, b, c; z).
///
/// Direct series for moderate |z|; the z -> 1-z connection formula close to
/// the singular point, guarded against the degenerate integer c-a-b case
/// (which falls back to the slow direct series while |z| <= 0.97).
pub fn hyp2f1(a: f64, b: f64, c: f64, z: C) -> Result<C> {
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        return hyp2f1_terminating(a, b, c, z);
    }
    if is_nonpositive_integer(c) {
        return Err(Error::InvalidParams(format!(
            "2F1 lower parameter {c} is a non-positive integer"
        )));
    }
    if z.im < 0.0 {
        return Ok(hyp2f1(a, b, c, z.conj())?.conj());
    }
    if z.norm() <= 0.75 {
        return hyp2f1_series(a, b, c, z, 800);
    }
    let cab = c - a - b;
    let near_integer_cab = (cab - cab.round()).abs() < 1e-6;
    if z.re > 0.75 && (c_one() - z).norm() < 0.6 && !near_integer_cab {
        let w = c_one() - z;
        let gc = gamma_fn(c)?;
        let t1 = gc * gamma_fn(cab)? * rgamma(c - a) * rgamma(c - b)
            * hyp2f1_series(a, b, 1.0 - cab, w, 800)?;
        let t2 = gc * gamma_fn(-cab)? * rgamma(a) * rgamma(b)
            * w.powc(C::new(cab, 0.0))
            * hyp2f1_series(c - a, c - b, 1.0 + cab, w, 800)?;
        return Ok(t1 + t2);
    }
    if z.norm() <= 0.97 {
        return hyp2f1_series(a, b, c, z, 3000);
    }
    Err(Error::NoConverge(format!(
        "2F1 argument {z} too close to 1 for the series and the connection formula is degenerate"
    )))
}

/// d/dz 2F1(a, b, c; z) = (ab/c) 2F1(a+1, b+1, c+1; z).
pub fn hyp2f1_deriv(a: f64, b: f64, c: f64, z: C) -> Result<C> {
    Ok((a * b / c) * hyp2f1(a + 1.0, b + 1.0, c + 1.0, z)?)
}
