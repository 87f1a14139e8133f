//! Complex-plane diagnostics: quantum momentum function off the real axis,
//! pole/zero location by argument-principle winding and residue quadrature,
//! action quantization over contours, and the pairwise-cancellation check.
//!
//! Scans work on the line family, where every wave function splits as
//! psi = e^(-xi^2/2) A(xi)/B(xi) with A and B entire. Poles of the momentum
//! function sit at zeros of A (residue -i hbar) and zeros of B (residue
//! +i hbar); counting the windings of A and B separately keeps
//! pairwise-cancelling pole pairs from hiding inside one cell.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::parallel::par_map;
use crate::quadrature::{find_turning_points, integrate_line_complex};
use crate::systems::{
    hermite_w2_jet, hermite_w3_jet, Family, LevelIndex, System, Variant,
};

type C = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComplexRect {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl ComplexRect {
    pub fn centered(half_width: f64, half_height: f64) -> ComplexRect {
        ComplexRect {
            re_min: -half_width,
            re_max: half_width,
            im_min: -half_height,
            im_max: half_height,
        }
    }

    pub fn corners(&self) -> [C; 4] {
        [
            C::new(self.re_min, self.im_min),
            C::new(self.re_max, self.im_min),
            C::new(self.re_max, self.im_max),
            C::new(self.re_min, self.im_max),
        ]
    }

    fn center(&self) -> C {
        C::new(0.5 * (self.re_min + self.re_max), 0.5 * (self.im_min + self.im_max))
    }

    fn diameter(&self) -> f64 {
        (self.re_max - self.re_min).hypot(self.im_max - self.im_min)
    }

    fn grow(&self, factor: f64) -> ComplexRect {
        let c = self.center();
        let hw = 0.5 * (self.re_max - self.re_min) * factor;
        let hh = 0.5 * (self.im_max - self.im_min) * factor;
        ComplexRect {
            re_min: c.re - hw,
            re_max: c.re + hw,
            im_min: c.im - hh,
            im_max: c.im + hh,
        }
    }

    fn quadrants(&self) -> [ComplexRect; 4] {
        let c = self.center();
        [
            ComplexRect { re_min: self.re_min, re_max: c.re, im_min: self.im_min, im_max: c.im },
            ComplexRect { re_min: c.re, re_max: self.re_max, im_min: self.im_min, im_max: c.im },
            ComplexRect { re_min: self.re_min, re_max: c.re, im_min: c.im, im_max: self.im_max },
            ComplexRect { re_min: c.re, re_max: self.re_max, im_min: c.im, im_max: self.im_max },
        ]
    }

    pub fn contains(&self, z: C) -> bool {
        self.re_min <= z.re && z.re <= self.re_max && self.im_min <= z.im && z.im <= self.im_max
    }
}

/// Entire function with two derivatives at a point.
type Jet = Box<dyn Fn(C) -> (C, C, C) + Sync + Send>;

/// psi = e^(-xi^2/2) A/B split of a line-family wave function.
pub struct WaveSplit {
    a: Jet,
    b: Jet,
}

fn const_one_jet() -> Jet {
    Box::new(|_z| (C::new(1.0, 0.0), C::new(0.0, 0.0), C::new(0.0, 0.0)))
}

fn wave_split(system: &System, n: u32) -> Result<WaveSplit> {
    if system.family() != Family::H {
        return Err(Error::Unsupported(
            "complex scans are implemented for the line family".into(),
        ));
    }
    match system.spec().variant {
        Variant::ConventionalSi => {
            let a: Jet = Box::new(move |z| {
                (
                    crate::specfun::hermite_deriv(n, 0, z),
                    crate::specfun::hermite_deriv(n, 1, z),
                    crate::specfun::hermite_deriv(n, 2, z),
                )
            });
            Ok(WaveSplit { a, b: const_one_jet() })
        }
        Variant::Ces { .. } => {
            let sys = system.clone();
            let b_jet: Jet = {
                let sys = sys.clone();
                Box::new(move |z| {
                    let (u, du, d2, _) = sys.u_jet4(z).expect("validated deformation");
                    (u, du, d2)
                })
            };
            if n == 0 {
                Ok(WaveSplit { a: const_one_jet(), b: b_jet })
            } else {
                let a: Jet = Box::new(move |z| {
                    let (u, du, d2u, d3u) = sys.u_jet4(z).expect("validated deformation");
                    let nf = n as f64;
                    let h = |m: i64, j: u32| -> C {
                        if m < 0 {
                            C::new(0.0, 0.0)
                        } else {
                            crate::specfun::hermite_deriv(m as u32, j, z)
                        }
                    };
                    let hn = h(n as i64, 0);
                    let hn1 = h(n as i64 - 1, 0);
                    let hn2 = h(n as i64 - 2, 0);
                    let hn3 = h(n as i64 - 3, 0);
                    let g = u * hn + du * hn1;
                    let dg = du * hn
                        + (2.0 * nf * u + d2u) * hn1
                        + 2.0 * (nf - 1.0) * du * hn2;
                    let d2g = d2u * hn
                        + (4.0 * nf * du + d3u) * hn1
                        + (4.0 * nf * (nf - 1.0) * u + 4.0 * (nf - 1.0) * d2u) * hn2
                        + 4.0 * (nf - 1.0) * (nf - 2.0) * du * hn3;
                    (g, dg, d2g)
                });
                Ok(WaveSplit { a, b: b_jet })
            }
        }
        Variant::KreinAdler { d } => {
            let nb = system.breve_n(n);
            let a: Jet = Box::new(move |z| hermite_w3_jet(d, nb, z));
            let b: Jet = Box::new(move |z| hermite_w2_jet(d, z));
            Ok(WaveSplit { a, b })
        }
    }
}

impl WaveSplit {
    /// Momentum function p = -i hbar (-xi + A'/A - B'/B), natural units.
    fn momentum(&self, z: C) -> Result<C> {
        let (a, da, _) = (self.a)(z);
        let (b, db, _) = (self.b)(z);
        let scale_a = da.norm().max(1e-30);
        let scale_b = db.norm().max(1e-30);
        if a.norm() < 1e-4 * scale_a * 1e-4 || b.norm() < 1e-4 * scale_b * 1e-4 {
            return Err(Error::ContourNearSingularity { re: z.re, im: z.im });
        }
        Ok(C::new(0.0, -1.0) * (-z + da / a - db / b))
    }

    fn momentum_with_deriv(&self, z: C) -> Result<(C, C)> {
        let (a, da, d2a) = (self.a)(z);
        let (b, db, d2b) = (self.b)(z);
        if a.norm() == 0.0 || b.norm() == 0.0 {
            return Err(Error::NearNode(0.0));
        }
        let la = da / a;
        let lb = db / b;
        let p = C::new(0.0, -1.0) * (-z + la - lb);
        let dp = C::new(0.0, -1.0) * (-C::new(1.0, 0.0) + d2a / a - la * la - d2b / b + lb * lb);
        Ok((p, dp))
    }

    /// Entire numerator of psi': zeros of the momentum function.
    fn deriv_numerator(&self, z: C) -> (C, C) {
        let (a, da, d2a) = (self.a)(z);
        let (b, db, d2b) = (self.b)(z);
        let c = -z * a * b + da * b - a * db;
        let dc = -a * b - z * (da * b + a * db) + d2a * b - a * d2b;
        (c, dc)
    }
}

// ---------------------------------------------------------------------------
// winding numbers by phase continuation along a rectangle boundary

fn winding(f: &dyn Fn(C) -> C, rect: &ComplexRect) -> Result<i32> {
    let corners = rect.corners();
    let mut total = 0.0;
    for i in 0..4 {
        total += edge_phase(f, corners[i], corners[(i + 1) % 4], 0)?;
    }
    let w = total / (2.0 * std::f64::consts::PI);
    let rounded = w.round();
    if (w - rounded).abs() > 0.25 {
        return Err(Error::NoConverge(format!("winding estimate {w} not close to an integer")));
    }
    Ok(rounded as i32)
}

fn edge_phase(f: &dyn Fn(C) -> C, z0: C, z1: C, depth: u32) -> Result<f64> {
    let v0 = f(z0);
    let v1 = f(z1);
    if v0.norm() < 1e-290 || v1.norm() < 1e-290 {
        return Err(Error::ContourNearSingularity { re: z0.re, im: z0.im });
    }
    let d = (v1 / v0).arg();
    if d.abs() <= std::f64::consts::FRAC_PI_2 && depth >= 3 {
        return Ok(d);
    }
    if depth > 42 {
        return Err(Error::ContourNearSingularity { re: z0.re, im: z0.im });
    }
    let mid = 0.5 * (z0 + z1);
    Ok(edge_phase(f, z0, mid, depth + 1)? + edge_phase(f, mid, z1, depth + 1)?)
}

/// Winding number with automatic outward nudges when the boundary grazes a
/// zero.
fn winding_nudged(f: &dyn Fn(C) -> C, rect: &ComplexRect) -> Result<(i32, ComplexRect)> {
    let mut attempt = *rect;
    for k in 0..5 {
        match winding(f, &attempt) {
            Ok(w) => return Ok((w, attempt)),
            Err(_) if k < 4 => {
                attempt = attempt.grow(1.0 + 0.013 * (k + 1) as f64);
            }
            Err(e) => return Err(e),
        }
    }
    unreachable!()
}

/// Zeros of an entire function inside a rectangle by recursive winding
/// subdivision plus a Newton polish.
fn isolate_zeros(
    value: &dyn Fn(C) -> C,
    deriv: &dyn Fn(C) -> C,
    rect: &ComplexRect,
    depth: u32,
    zeros: &mut Vec<C>,
    unresolved: &mut Vec<ComplexRect>,
) {
    let (w, used) = match winding_nudged(value, rect) {
        Ok(x) => x,
        Err(_) => {
            unresolved.push(*rect);
            return;
        }
    };
    if w == 0 {
        return;
    }
    if w == 1 && used.diameter() < 0.05 {
        if let Some(z) = newton_polish(value, deriv, used.center(), used.diameter()) {
            zeros.push(z);
            return;
        }
    }
    if depth >= 40 {
        unresolved.push(*rect);
        return;
    }
    for q in used.quadrants() {
        isolate_zeros(value, deriv, &q, depth + 1, zeros, unresolved);
    }
}

fn newton_polish(
    value: &dyn Fn(C) -> C,
    deriv: &dyn Fn(C) -> C,
    start: C,
    trust: f64,
) -> Option<C> {
    let mut z = start;
    for _ in 0..80 {
        let f = value(z);
        let df = deriv(z);
        if df.norm() == 0.0 {
            return None;
        }
        let step = f / df;
        z -= step;
        if (z - start).norm() > 4.0 * trust.max(1e-6) {
            return None; // wandered out of the isolating cell
        }
        if step.norm() < 1e-13 * z.norm().max(1.0) {
            return Some(z);
        }
    }
    None
}

fn scan_zeros(
    value: &(dyn Fn(C) -> C + Sync),
    deriv: &(dyn Fn(C) -> C + Sync),
    region: &ComplexRect,
    resolution: usize,
) -> (Vec<C>, Vec<ComplexRect>) {
    let res = resolution.max(1);
    let mut cells = Vec::with_capacity(res * res);
    for i in 0..res {
        for j in 0..res {
            let fx = |k: usize, lo: f64, hi: f64, n: usize| lo + (hi - lo) * k as f64 / n as f64;
            cells.push(ComplexRect {
                re_min: fx(i, region.re_min, region.re_max, res),
                re_max: fx(i + 1, region.re_min, region.re_max, res),
                im_min: fx(j, region.im_min, region.im_max, res),
                im_max: fx(j + 1, region.im_min, region.im_max, res),
            });
        }
    }
    let results = par_map(cells, move |cell| {
        let mut zeros = Vec::new();
        let mut unresolved = Vec::new();
        // cells overlap slightly so zeros sitting on shared cell edges are
        // interior to at least one cell
        isolate_zeros(value, deriv, &cell.grow(1.006), 0, &mut zeros, &mut unresolved);
        (zeros, unresolved)
    });
    let margin = 1e-9 * (region.diameter() + 1.0);
    let mut zeros: Vec<C> = Vec::new();
    let mut unresolved = Vec::new();
    for (zs, un) in results {
        for z in zs {
            let inside = region.re_min - margin <= z.re
                && z.re <= region.re_max + margin
                && region.im_min - margin <= z.im
                && z.im <= region.im_max + margin;
            if inside && !zeros.iter().any(|w| (w - z).norm() < 1e-7) {
                zeros.push(z);
            }
        }
        unresolved.extend(un);
    }
    zeros.sort_by(|p, q| p.re.partial_cmp(&q.re).unwrap().then(p.im.partial_cmp(&q.im).unwrap()));
    (zeros, unresolved)
}

// ---------------------------------------------------------------------------
// public report types

#[derive(Debug, Clone, Serialize)]
pub struct PolePoint {
    pub re: f64,
    pub im: f64,
    pub residue_re: f64,
    pub residue_im: f64,
}

impl PolePoint {
    pub fn location(&self) -> C {
        C::new(self.re, self.im)
    }

    pub fn residue(&self) -> C {
        C::new(self.residue_re, self.residue_im)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ZeroPoint {
    pub re: f64,
    pub im: f64,
}

impl ZeroPoint {
    pub fn location(&self) -> C {
        C::new(self.re, self.im)
    }
}

/// Located poles and zeros of a complex function on a bounded window.
#[derive(Debug, Clone, Serialize)]
pub struct SingularityReport {
    pub region: ComplexRect,
    pub resolution: usize,
    pub poles: Vec<PolePoint>,
    pub zeros: Vec<ZeroPoint>,
    pub unresolved_cells: Vec<ComplexRect>,
}

/// Action integral over a closed rectangle, in units where the quantized
/// value is n hbar.
#[derive(Debug, Clone, Serialize)]
pub struct ContourResult {
    pub contour: ComplexRect,
    pub j_re: f64,
    pub j_im: f64,
    pub n_expected: i64,
}

impl ContourResult {
    pub fn j(&self) -> C {
        C::new(self.j_re, self.j_im)
    }
}

// ---------------------------------------------------------------------------
// operations

/// Quantum momentum function p = -i hbar psi'/psi at complex x (physical
/// coordinate, natural units).
pub fn qmf_eval(system: &System, n: u32, x: C) -> Result<C> {
    let t = match system.family() {
        Family::H => x,
        Family::L => x * x,
        Family::J => (2.0 * x).cos(),
    };
    let (psi, dpsi_dt) = system.wavefunction_with_deriv(LevelIndex::new(n), t)?;
    if psi.norm() < 1e-280 {
        return Err(Error::NearNode(psi.norm()));
    }
    let dt_dx = system.dnatural_dx(x, t);
    let hbar = system.spec().hbar;
    Ok(C::new(0.0, -hbar) * dpsi_dt * dt_dx / psi)
}

/// Max over the grid of |p^2 - i hbar p' - (E - V)| / max(1, |E - V|),
/// with p' from the analytic split (not the eigenvalue equation).
pub fn qhj_residual_check(system: &System, n: u32, grid: &[C]) -> Result<f64> {
    let split = wave_split(system, n)?;
    let ground = wave_split(system, 0)?;
    let e = system.level_constant(n);
    let mut worst = 0.0_f64;
    for &z in grid {
        let (p, dp) = split.momentum_with_deriv(z)?;
        // V = W^2 - W' from the ground-state split
        let (a, da, d2a) = (ground.a)(z);
        let (b, db, d2b) = (ground.b)(z);
        let la = da / a;
        let lb = db / b;
        let w = z - la + lb;
        let dw = C::new(1.0, 0.0) - (d2a / a - la * la) + (d2b / b - lb * lb);
        let v = w * w - dw;
        let lhs = p * p - C::new(0.0, 1.0) * dp;
        let rhs = e - v;
        let resid = (lhs - rhs).norm() / rhs.norm().max(1.0);
        worst = worst.max(resid);
    }
    Ok(worst)
}

/// Poles (with residues) and zeros of the momentum function in the window.
pub fn cell_residue_scan(
    system: &System,
    n: u32,
    region: &ComplexRect,
    resolution: usize,
) -> Result<SingularityReport> {
    let split = wave_split(system, n)?;
    let hbar = system.spec().hbar;
    let a_val = |z: C| (split.a)(z).0;
    let a_der = |z: C| (split.a)(z).1;
    let b_val = |z: C| (split.b)(z).0;
    let b_der = |z: C| (split.b)(z).1;
    let (a_zeros, mut unresolved) = scan_zeros(&a_val, &a_der, region, resolution);
    let (b_zeros, un2) = scan_zeros(&b_val, &b_der, region, resolution);
    unresolved.extend(un2);
    let mut poles = Vec::new();
    let mut sites: Vec<C> = a_zeros.clone();
    sites.extend(b_zeros.iter().copied());
    for z0 in a_zeros.iter().chain(b_zeros.iter()) {
        let sep = sites
            .iter()
            .filter(|s| (*s - z0).norm() > 1e-9)
            .map(|s| (s - z0).norm())
            .fold(f64::INFINITY, f64::min);
        let radius = (0.25 * sep).min(1e-2).max(1e-7);
        let res = ring_residue(|z| split.momentum(z), *z0, radius)?;
        poles.push(PolePoint {
            re: z0.re,
            im: z0.im,
            residue_re: res.re,
            residue_im: res.im,
        });
        let _ = hbar;
    }
    poles.sort_by(|p, q| {
        p.re.partial_cmp(&q.re).unwrap().then(p.im.partial_cmp(&q.im).unwrap())
    });
    // drop reported poles whose residue vanished (A and B sharing a zero)
    poles.retain(|p| p.residue().norm() > 1e-6);
    let (c_zeros, un3) = {
        let c_val = |z: C| split.deriv_numerator(z).0;
        let c_der = |z: C| split.deriv_numerator(z).1;
        scan_zeros(&c_val, &c_der, region, resolution)
    };
    unresolved.extend(un3);
    // zeros of psi' that coincide with poles of p are not zeros of p
    let zeros = c_zeros
        .into_iter()
        .filter(|z| !poles.iter().any(|p| (p.location() - z).norm() < 1e-7))
        .map(|z| ZeroPoint { re: z.re, im: z.im })
        .collect();
    Ok(SingularityReport { region: *region, resolution, poles, zeros, unresolved_cells: unresolved })
}

/// Residue by trapezoidal quadrature on a small circle; exponentially
/// accurate for a meromorphic integrand with the pole strictly inside.
fn ring_residue(f: impl Fn(C) -> Result<C>, center: C, radius: f64) -> Result<C> {
    const POINTS: usize = 128;
    let mut acc = C::new(0.0, 0.0);
    for k in 0..POINTS {
        let th = 2.0 * std::f64::consts::PI * k as f64 / POINTS as f64;
        let offset = radius * C::new(th.cos(), th.sin());
        let z = center + offset;
        // dz = i r e^{i th} dth; 1/(2 pi i) folds the i and 2 pi away
        acc += f(z)? * offset;
    }
    Ok(acc / POINTS as f64)
}

/// Parts of the reduced superpotential W~ = A~/B~ for the line-family
/// integrand scans: (A~, A~', B~, B~').
fn w_tilde_parts(system: &System) -> Result<Box<dyn Fn(C) -> (C, C, C, C) + Sync + Send>> {
    if system.family() != Family::H {
        return Err(Error::Unsupported(
            "integrand scans are implemented for the line family".into(),
        ));
    }
    match system.spec().variant {
        Variant::ConventionalSi => Ok(Box::new(|z| {
            (z, C::new(1.0, 0.0), C::new(1.0, 0.0), C::new(0.0, 0.0))
        })),
        Variant::Ces { .. } => {
            let sys = system.clone();
            Ok(Box::new(move |z| {
                let (u, du, d2, _) = sys.u_jet4(z).expect("validated deformation");
                let a = z * u + du;
                let da = u + z * du + d2;
                (a, da, u, du)
            }))
        }
        Variant::KreinAdler { d } => Ok(Box::new(move |z| {
            let (p, dp, d2p) = hermite_w3_jet(d, 0, z);
            let (q, dq, d2q) = hermite_w2_jet(d, z);
            let a = z * p * q - dp * q + p * dq;
            let da = p * q + z * (dp * q + p * dq) - d2p * q + p * d2q;
            let b = p * q;
            let db = dp * q + p * dq;
            (a, da, b, db)
        })),
    }
}

/// Poles of W(x)^2 (reported with the coefficient of the integrand's simple
/// pole as residue) and branch points of sqrt(E_n - W^2), located as complex
/// zeros of E_n - W^2.
pub fn swkb_integrand_singularities(
    system: &System,
    n: u32,
    region: &ComplexRect,
    resolution: usize,
) -> Result<SingularityReport> {
    let parts = w_tilde_parts(system)?;
    let c = system.level_constant(n);
    // poles of W~^2: zeros of B~
    let b_val = |z: C| parts(z).2;
    let b_der = |z: C| parts(z).3;
    let (b_zeros, mut unresolved) = scan_zeros(&b_val, &b_der, region, resolution);
    let mut poles = Vec::new();
    for z0 in b_zeros {
        let (a, _, _, db) = parts(z0);
        // sqrt(E - W~^2) ~ +-i q/(z - z0) with q = A~(z0)/B~'(z0)
        let q = C::new(0.0, 1.0) * a / db;
        poles.push(PolePoint { re: z0.re, im: z0.im, residue_re: q.re, residue_im: q.im });
    }
    // branch points: zeros of D = c B~^2 - A~^2
    let d_val = |z: C| {
        let (a, _, b, _) = parts(z);
        c * b * b - a * a
    };
    let d_der = |z: C| {
        let (a, da, b, db) = parts(z);
        2.0 * (c * b * db - a * da)
    };
    let (branch, un2) = scan_zeros(&d_val, &d_der, region, resolution);
    unresolved.extend(un2);
    let zeros = branch.into_iter().map(|z| ZeroPoint { re: z.re, im: z.im }).collect();
    poles.sort_by(|p, q| {
        p.re.partial_cmp(&q.re).unwrap().then(p.im.partial_cmp(&q.im).unwrap())
    });
    Ok(SingularityReport { region: *region, resolution, poles, zeros, unresolved_cells: unresolved })
}

/// Action integral (1/2 pi) closed-contour integral of p over the rectangle,
/// counterclockwise.
pub fn qhj_action(system: &System, n: u32, contour: &ComplexRect) -> Result<ContourResult> {
    let split = wave_split(system, n)?;
    let hbar = system.spec().hbar;
    let corners = contour.corners();
    let mut total = C::new(0.0, 0.0);
    for i in 0..4 {
        total += integrate_line_complex(
            &|z| split.momentum(z),
            corners[i],
            corners[(i + 1) % 4],
            1e-11,
        )?;
    }
    // natural-unit momentum: scale to the requested hbar
    let j = total / (2.0 * std::f64::consts::PI) * hbar;
    Ok(ContourResult {
        contour: *contour,
        j_re: j.re,
        j_im: j.im,
        n_expected: (j.re / hbar).round() as i64,
    })
}

/// Thin rectangle around the real turning points at level n.
pub fn classical_contour(system: &System, n: u32) -> Result<ComplexRect> {
    let c = system.level_constant(n);
    let f = |t: f64| c - system.superpotential_w(t).map(|w| w * w).unwrap_or(f64::INFINITY);
    let brackets = find_turning_points(&f, system.scan_domain(c))?;
    let lo = brackets.first().unwrap().a_left;
    let hi = brackets.last().unwrap().a_right;
    Ok(ComplexRect { re_min: lo - 0.4, re_max: hi + 0.4, im_min: -0.12, im_max: 0.12 })
}

/// Deviation J_Gamma_R - J_QHJ for a square contour of half-width R; the
/// enclosed off-axis poles cancel pairwise, so the deviation measures how
/// well the cancellation holds numerically. Nudges R by steps of 2% (up to
/// five attempts) when the contour grazes a singularity.
pub fn cancellation_check(system: &System, n: u32, r: f64) -> Result<C> {
    if !matches!(system.spec().variant, Variant::Ces { .. } | Variant::ConventionalSi)
        && system.krein_adler_d().is_none()
    {
        return Err(Error::Unsupported("cancellation check needs a line-family system".into()));
    }
    let thin = classical_contour(system, n)?;
    let j_qhj = qhj_action(system, n, &thin)?.j();
    let mut last_err = None;
    for attempt in 0..5 {
        let factor = match attempt {
            0 => 1.0,
            1 => 1.02,
            2 => 0.98,
            3 => 1.04,
            _ => 0.96,
        };
        let square = ComplexRect::centered(r * factor, r * factor);
        match qhj_action(system, n, &square) {
            Ok(res) => return Ok(res.j() - j_qhj),
            Err(e @ (Error::ContourNearSingularity { .. } | Error::QuadratureNoConverge { .. })) => {
                last_err = Some(e)
            }
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap())
}
