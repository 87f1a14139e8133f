//! Residual of the quantization condition, its series expansion about the
//! exactly-solvable point b = beta = 0, the convergence-radius test, and
//! (b, beta) convergence-domain maps.
//!
//! The integrand sqrt(G) is written as sqrt(F0) sqrt(1 + (G - F0)/F0) with
//! F0 the quadratic vanishing at the same turning points; the binomial
//! series in the ratio integrates term by term.

use crate::error::{Error, Result};
use crate::parallel::par_map;
use crate::quadrature::{find_turning_points, integrate_theta, Bracket};
use crate::swkb::swkb_integral;
use crate::systems::{build_system, Family, System, SystemSpec, Variant};

/// k-th Maclaurin coefficient of sqrt(1 + u), by the stable ratio recurrence.
pub fn binomial_half_coeff(k: u32) -> f64 {
    let mut c = 1.0;
    for j in 1..=k {
        c *= (3.0 - 2.0 * j as f64) / (2.0 * j as f64);
    }
    c
}

struct ExpansionFrame<'a> {
    system: &'a System,
    c: f64,
    bracket: Bracket,
    kappa: f64,
}

impl<'a> ExpansionFrame<'a> {
    fn new(system: &'a System, n: u32) -> Result<ExpansionFrame<'a>> {
        if !system.is_ces() {
            return Err(Error::Unsupported(
                "the residual expansion is defined for the deformed (CES) variant".into(),
            ));
        }
        let c = system.level_constant(n);
        let f = |t: f64| c - system.superpotential_w(t).map(|w| w * w).unwrap_or(f64::INFINITY);
        let brackets = find_turning_points(&f, system.scan_domain(c))?;
        if brackets.len() != 1 {
            return Err(Error::MultiBracket { count: brackets.len() });
        }
        let (g, h) = match system.spec().variant {
            Variant::Ces { .. } => (system.spec().g.unwrap_or(0.0), system.spec().h.unwrap_or(0.0)),
            _ => unreachable!(),
        };
        let kappa = match system.family() {
            Family::H | Family::L => 1.0,
            Family::J => {
                let m = system.breve_n(n) as f64;
                0.5 * (2.0 * m + g + h)
            }
        };
        Ok(ExpansionFrame { system, c, bracket: brackets[0], kappa })
    }

    /// Series numerator N(t); vanishes identically iff b = beta = 0.
    fn numerator(&self, t: f64) -> f64 {
        let w = self.system.superpotential_w(t).unwrap_or(f64::NAN);
        let g = self.c - w * w;
        let f0 = (t - self.bracket.a_left) * (self.bracket.a_right - t);
        match self.system.family() {
            Family::H => g - f0,
            Family::L => 4.0 * g * t - f0,
            Family::J => g * (1.0 - t * t) / (self.kappa * self.kappa) - f0,
        }
    }

    /// Extra measure m(t) multiplying dt in the term integrals.
    fn term_measure(&self, t: f64) -> f64 {
        match self.system.family() {
            Family::H => 1.0,
            Family::L => 1.0 / t,
            Family::J => 1.0 / (1.0 - t * t),
        }
    }

    /// Global prefactor of every term.
    fn prefactor(&self) -> f64 {
        match self.system.family() {
            Family::H => 1.0,
            Family::L => 0.5,
            Family::J => self.kappa,
        }
    }

    fn leading_term(&self) -> f64 {
        let (al, ar) = (self.bracket.a_left, self.bracket.a_right);
        let pi = std::f64::consts::PI;
        match self.system.family() {
            Family::H => pi * (ar - al) * (ar - al) / 8.0,
            Family::L => {
                let s = ar.sqrt() - al.sqrt();
                pi / 4.0 * s * s
            }
            Family::J => {
                self.kappa * pi / 2.0
                    * (2.0
                        - ((1.0 - al) * (1.0 - ar)).sqrt()
                        - ((1.0 + al) * (1.0 + ar)).sqrt())
            }
        }
    }

    fn term(&self, k: u32) -> Result<f64> {
        if k == 0 {
            return Ok(self.leading_term());
        }
        let (al, ar) = (self.bracket.a_left, self.bracket.a_right);
        let mid = 0.5 * (al + ar);
        let hw = 0.5 * (ar - al);
        let coeff = binomial_half_coeff(k) * self.prefactor();
        // t = mid + hw sin(theta): F0 = (hw cos theta)^2 and
        // dt / F0^(k-1/2) = d theta / (hw cos theta)^(2k-2); the numerator's
        // k-th order zeros at the ends keep the integrand analytic in theta.
        let g = |theta: f64| -> f64 {
            let t = mid + hw * theta.sin();
            let n = self.numerator(t);
            let denom = (hw * theta.cos()).powi(2 * k as i32 - 2);
            n.powi(k as i32) * self.term_measure(t) / denom
        };
        Ok(coeff * integrate_theta(&g)?)
    }

    /// sup over the open bracket of |N/F0|, including one-sided endpoint
    /// limits obtained by extrapolation (both N and F0 vanish there).
    fn sup_ratio(&self) -> f64 {
        let (al, ar) = (self.bracket.a_left, self.bracket.a_right);
        let width = ar - al;
        let rho = |t: f64| -> f64 {
            let f0 = (t - al) * (ar - t);
            let v = (self.numerator(t) / f0).abs();
            if v.is_finite() {
                v
            } else {
                0.0
            }
        };
        const SAMPLES: usize = 2000;
        let mut best = 0.0;
        let mut best_i = 1;
        for i in 1..SAMPLES {
            let t = al + width * i as f64 / SAMPLES as f64;
            let v = rho(t);
            if v > best {
                best = v;
                best_i = i;
            }
        }
        // golden-section refinement around the sampled maximizer, clamped
        // strictly inside the bracket (the ratio is 0/0 at the endpoints)
        let lo = al + width * best_i.saturating_sub(1).max(1) as f64 / SAMPLES as f64;
        let hi = al + width * (best_i + 1).min(SAMPLES - 1) as f64 / SAMPLES as f64;
        best = best.max(golden_max(&rho, lo, hi));
        // endpoint limits by linear extrapolation from geometric offsets
        for endpoint in [al, ar] {
            let sign = if endpoint == al { 1.0 } else { -1.0 };
            let r1 = rho(endpoint + sign * 1e-3 * width);
            let r2 = rho(endpoint + sign * 1e-4 * width);
            let r3 = rho(endpoint + sign * 1e-5 * width);
            let _ = r1;
            let limit = r3 + (r3 - r2) / 9.0;
            best = best.max(limit.abs());
        }
        best
    }
}

fn golden_max(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..60 {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    fc.max(fd)
}

/// Series term T_k of the expansion of the quantization integral.
pub fn expansion_term(system: &System, n: u32, k: u32) -> Result<f64> {
    ExpansionFrame::new(system, n)?.term(k)
}

/// sup of the expansion ratio over the bracket; the series converges when
/// this stays below one.
pub fn convergence_ratio(system: &System, n: u32) -> Result<f64> {
    Ok(ExpansionFrame::new(system, n)?.sup_ratio())
}

/// Residual diagnostics: terms, partial sums, the direct residual, and the
/// convergence-ratio classification.
#[derive(Debug, Clone)]
pub struct ExpansionReport {
    pub n: u32,
    pub k_max: u32,
    pub terms: Vec<f64>,
    pub partial_sums: Vec<f64>,
    pub delta_numeric: f64,
    pub sup_ratio: f64,
    pub inside_radius: bool,
    pub diverging: bool,
}

pub fn residual_report(system: &System, n: u32, k_max: u32) -> Result<ExpansionReport> {
    let frame = ExpansionFrame::new(system, n)?;
    let mut terms = Vec::with_capacity(k_max as usize + 1);
    let mut partial_sums = Vec::with_capacity(k_max as usize + 1);
    let mut acc = 0.0;
    for k in 0..=k_max {
        let t = frame.term(k)?;
        acc += t;
        terms.push(t);
        partial_sums.push(acc);
    }
    // growing |T_k| for three consecutive k beyond k = 3 marks divergence
    let mut diverging = false;
    let mut grow_streak = 0;
    for k in 4..terms.len() {
        if terms[k].abs() > terms[k - 1].abs() {
            grow_streak += 1;
            if grow_streak >= 3 {
                diverging = true;
            }
        } else {
            grow_streak = 0;
        }
    }
    let direct = swkb_integral(system, n)?;
    let sup_ratio = frame.sup_ratio();
    Ok(ExpansionReport {
        n,
        k_max,
        terms,
        partial_sums,
        delta_numeric: n as f64 * std::f64::consts::PI
            - direct.i_over_pi * std::f64::consts::PI,
        sup_ratio,
        inside_radius: sup_ratio < 1.0,
        diverging,
    })
}

/// Cell classification of the (b, beta) plane.
#[derive(Debug, Clone, PartialEq)]
pub enum CellLabel {
    Inside { sup_ratio: f64 },
    Outside { sup_ratio: f64 },
    Invalid { reason: String },
}

impl CellLabel {
    pub fn is_inside(&self) -> bool {
        matches!(self, CellLabel::Inside { .. })
    }

    pub fn sup_ratio(&self) -> Option<f64> {
        match self {
            CellLabel::Inside { sup_ratio } | CellLabel::Outside { sup_ratio } => Some(*sup_ratio),
            CellLabel::Invalid { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub b_min: f64,
    pub b_max: f64,
    pub nb: usize,
    pub beta_min: f64,
    pub beta_max: f64,
    pub nbeta: usize,
}

impl GridSpec {
    pub fn b_at(&self, i: usize) -> f64 {
        self.b_min + (self.b_max - self.b_min) * (i as f64 + 0.5) / self.nb as f64
    }

    pub fn beta_at(&self, j: usize) -> f64 {
        self.beta_min + (self.beta_max - self.beta_min) * (j as f64 + 0.5) / self.nbeta as f64
    }
}

/// Convergence-domain map on a (b, beta) lattice with the sup-ratio = 1
/// boundary extracted by linear interpolation between adjacent cells.
#[derive(Debug, Clone)]
pub struct DomainMap {
    pub n: u32,
    pub grid: GridSpec,
    /// row-major: cells[i * nbeta + j] for (b_i, beta_j)
    pub cells: Vec<CellLabel>,
    pub boundary: Vec<(f64, f64)>,
}

impl DomainMap {
    pub fn cell(&self, i: usize, j: usize) -> &CellLabel {
        &self.cells[i * self.grid.nbeta + j]
    }
}

pub fn domain_map(family: Family, n: u32, grid: GridSpec) -> DomainMap {
    let mut coords = Vec::with_capacity(grid.nb * grid.nbeta);
    for i in 0..grid.nb {
        for j in 0..grid.nbeta {
            coords.push((grid.b_at(i), grid.beta_at(j)));
        }
    }
    let cells = par_map(coords, move |(b, beta)| {
        let spec = SystemSpec::ces(family, b, beta);
        match build_system(&spec).and_then(|sys| convergence_ratio(&sys, n)) {
            Ok(sup_ratio) => {
                if sup_ratio < 1.0 {
                    CellLabel::Inside { sup_ratio }
                } else {
                    CellLabel::Outside { sup_ratio }
                }
            }
            Err(e) => CellLabel::Invalid { reason: e.to_string() },
        }
    });
    let mut boundary = Vec::new();
    let level = |a: f64, b: f64| -> f64 {
        // fraction along the segment where sup_ratio crosses 1
        (1.0 - a) / (b - a)
    };
    for i in 0..grid.nb {
        for j in 0..grid.nbeta {
            let here = cells[i * grid.nbeta + j].sup_ratio();
            if i + 1 < grid.nb {
                let right = cells[(i + 1) * grid.nbeta + j].sup_ratio();
                if let (Some(a), Some(b)) = (here, right) {
                    if (a - 1.0) * (b - 1.0) < 0.0 {
                        let f = level(a, b);
                        boundary.push((
                            grid.b_at(i) + f * (grid.b_at(i + 1) - grid.b_at(i)),
                            grid.beta_at(j),
                        ));
                    }
                }
            }
            if j + 1 < grid.nbeta {
                let up = cells[i * grid.nbeta + j + 1].sup_ratio();
                if let (Some(a), Some(b)) = (here, up) {
                    if (a - 1.0) * (b - 1.0) < 0.0 {
                        let f = level(a, b);
                        boundary.push((
                            grid.b_at(i),
                            grid.beta_at(j) + f * (grid.beta_at(j + 1) - grid.beta_at(j)),
                        ));
                    }
                }
            }
        }
    }
    DomainMap { n, grid, cells, boundary }
}
