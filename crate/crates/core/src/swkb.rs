//! SWKB integrals in natural variables, the quantization error Err(n),
//! parameter sweeps, hbar-invariance, and spectrum inversion.

use crate::error::{Error, Result};
use crate::parallel::par_map;
use crate::quadrature::{find_turning_points, integrate_sqrt_bracket, Bracket, ScanDomain};
use crate::systems::{build_system, Family, System, SystemSpec, Variant};

/// One quantization record: I/pi in natural units and Err(n) = (I - n pi)/I.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SwkbResult {
    pub n: u32,
    pub i_over_pi: f64,
    pub err: f64,
    pub brackets_used: u32,
}

fn brackets_for_constant(system: &System, c: f64) -> Result<Vec<Bracket>> {
    let f = |t: f64| c - system.superpotential_w(t).map(|w| w * w).unwrap_or(f64::INFINITY);
    find_turning_points(&f, system.scan_domain(c))
}

fn integrate_brackets(system: &System, c: f64, brackets: &[Bracket]) -> Result<f64> {
    let f = |t: f64| c - system.superpotential_w(t).map(|w| w * w).unwrap_or(f64::NEG_INFINITY);
    let m = |t: f64| system.measure(t);
    let mut total = 0.0;
    for &b in brackets {
        total += integrate_sqrt_bracket(b, &f, &m)?;
    }
    Ok(total)
}

/// Dimensionless SWKB integral at level n; the condition holds when
/// I/pi = n. Refuses configurations with more than one bracket.
pub fn swkb_integral(system: &System, n: u32) -> Result<SwkbResult> {
    swkb_integral_with_policy(system, n, false)
}

/// As `swkb_integral`, optionally summing the integrals of every bracket
/// when the level equation has more than two turning points.
pub fn swkb_integral_with_policy(system: &System, n: u32, allow_multi: bool) -> Result<SwkbResult> {
    if n == 0 {
        // exact for the ground state by construction: zero-width bracket
        return Ok(SwkbResult { n, i_over_pi: 0.0, err: 0.0, brackets_used: 0 });
    }
    let c = system.level_constant(n);
    let brackets = brackets_for_constant(system, c)?;
    if brackets.len() > 1 && !allow_multi {
        return Err(Error::MultiBracket { count: brackets.len() });
    }
    let i = integrate_brackets(system, c, &brackets)?;
    let pi = std::f64::consts::PI;
    Ok(SwkbResult {
        n,
        i_over_pi: i / pi,
        err: (i - n as f64 * pi) / i,
        brackets_used: brackets.len() as u32,
    })
}

/// Swept parameter for `swkb_sweep`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    ShiftB,
    DeformBeta,
    Level,
}

#[derive(Debug, Clone)]
pub struct SweepPoint {
    pub axis_value: f64,
    pub n: u32,
    pub outcome: std::result::Result<SwkbResult, String>,
}

fn spec_with_axis(template: &SystemSpec, axis: SweepAxis, value: f64) -> Result<SystemSpec> {
    let mut spec = *template;
    match axis {
        SweepAxis::Level => return Ok(spec),
        SweepAxis::ShiftB | SweepAxis::DeformBeta => {
            let (b, beta) = match spec.variant {
                Variant::Ces { b, beta } => (b, beta),
                _ => {
                    return Err(Error::Unsupported(
                        "parameter sweeps apply to the deformed (CES) variant".into(),
                    ))
                }
            };
            spec.variant = match axis {
                SweepAxis::ShiftB => Variant::Ces { b: value, beta },
                SweepAxis::DeformBeta => Variant::Ces { b, beta: value },
                SweepAxis::Level => unreachable!(),
            };
        }
    }
    Ok(spec)
}

/// Grid sweep of I/pi and Err; per-point failures are recorded, not fatal.
pub fn swkb_sweep(
    template: &SystemSpec,
    axis: SweepAxis,
    grid: &[f64],
    levels: &[u32],
    allow_multi: bool,
) -> Vec<SweepPoint> {
    let mut work = Vec::new();
    for &v in grid {
        for &n in levels {
            work.push((v, n));
        }
    }
    par_map(work, move |(v, n)| {
        let outcome = (|| -> Result<SwkbResult> {
            let spec = spec_with_axis(template, axis, v)?;
            let system = build_system(&spec)?;
            swkb_integral_with_policy(&system, n, allow_multi)
        })()
        .map_err(|e| e.to_string());
        SweepPoint { axis_value: v, n, outcome }
    })
}

/// Dimensional-route integral: turning points and quadrature directly in the
/// physical coordinate with explicit hbar and omega. Shares no
/// natural-variable reduction with `swkb_integral`, so agreement between the
/// two is a real check.
pub fn swkb_integral_dimensional(system: &System, n: u32) -> Result<f64> {
    let spec = system.spec();
    let (hbar, omega) = (spec.hbar, spec.omega);
    let e_n = system.energy(crate::systems::LevelIndex::new(n));
    if n == 0 {
        return Ok(0.0);
    }
    // W(x) in terms of the natural-variable reduced superpotential
    let w_x = |x: f64| -> Result<f64> {
        match spec.family {
            Family::H => {
                let xi = (omega / hbar).sqrt() * x;
                Ok((hbar * omega).sqrt() * system.superpotential_w(xi)?)
            }
            Family::L => {
                let z = omega / hbar * x * x;
                Ok(2.0 * (hbar * omega).sqrt() * system.superpotential_w(z)?)
            }
            Family::J => {
                let y = (2.0 * x).cos();
                Ok(-2.0 * hbar * system.superpotential_w(y)?)
            }
        }
    };
    let f = |x: f64| w_x(x).map(|w| e_n - w * w).unwrap_or(f64::NEG_INFINITY);
    let domain = match spec.family {
        Family::H => {
            let s = ((e_n / (hbar * omega)).max(1.0).sqrt() + 5.0) * (hbar / omega).sqrt();
            ScanDomain::Line { lo: -s, hi: s }
        }
        Family::L => {
            let zmax = 8.0 * (e_n / (hbar * omega) + spec.g.unwrap_or(1.0) + 5.0);
            ScanDomain::LogLine { lo: 1e-6, hi: (zmax * hbar / omega).sqrt() }
        }
        Family::J => ScanDomain::Line { lo: 1e-9, hi: std::f64::consts::FRAC_PI_2 - 1e-9 },
    };
    let brackets = find_turning_points(&f, domain)?;
    let m = |_: f64| 1.0;
    let mut total = 0.0;
    for &b in &brackets {
        total += integrate_sqrt_bracket(b, &f, &m)?;
    }
    Ok(total)
}

/// True iff I_SWKB/hbar agrees across all scales to 1e-9 relative.
pub fn hbar_invariance_check(spec: &SystemSpec, scales: &[f64], n: u32) -> Result<bool> {
    let mut reference: Option<f64> = None;
    for &hbar in scales {
        if hbar <= 0.0 {
            return Err(Error::Constraint(format!("hbar scale {hbar} must be positive")));
        }
        let scaled = SystemSpec { hbar, ..*spec };
        let system = build_system(&scaled)?;
        let i_over_hbar = swkb_integral_dimensional(&system, n)? / hbar;
        match reference {
            None => reference = Some(i_over_hbar),
            Some(r) => {
                if (i_over_hbar - r).abs() > 1e-9 * r.abs().max(1e-12) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Solves I(E) = n pi hbar for the energy by bracketed bisection.
pub fn spectrum_from_swkb(system: &System, n: u32) -> Result<f64> {
    if n == 0 {
        return Ok(0.0);
    }
    let target = n as f64 * std::f64::consts::PI;
    let i_of_e = |e: f64| -> Result<f64> {
        let c = system.level_constant_of_energy(e);
        let brackets = brackets_for_constant(system, c)?;
        integrate_brackets(system, c, &brackets)
    };
    let exact = system.energy(crate::systems::LevelIndex::new(n));
    let mut hi = if exact > 0.0 { 4.0 * exact } else { 1.0 };
    let mut i_hi = i_of_e(hi)?;
    let mut doublings = 0;
    while i_hi < target {
        hi *= 2.0;
        i_hi = i_of_e(hi)?;
        doublings += 1;
        if doublings > 40 {
            return Err(Error::SpectrumBracket { i_hi, target });
        }
    }
    let mut lo = 0.0;
    // I(E) grows monotonically with E (the bracket widens and the integrand rises)
    while hi - lo > 1e-9 {
        let mid = 0.5 * (lo + hi);
        let val = match i_of_e(mid) {
            Ok(v) => v,
            Err(Error::NoBracket) => 0.0,
            Err(e) => return Err(e),
        };
        if val < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
