//! Validated quantum systems: conventional shape-invariant (H, L, J),
//! conditionally-exactly-solvable deformations, and Krein-Adler pair
//! deletions, exposing energies, superpotentials in natural coordinates,
//! and wave functions.
//!
//! All internal computation is in natural units (hbar = omega = 1); the
//! spec-level hbar and omega enter only when reporting dimensional energies
//! and in the hbar-invariance route.

mod ces;
mod krein_adler;

pub use ces::CesJPrefactor;
pub use krein_adler::{hermite_w2_jet, hermite_w3_jet, ka_wronskian, phi_wronskians};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::ScanDomain;
use crate::specfun::{gamma_fn, hermite, hermite_deriv, jacobi, laguerre, orth_poly_deriv, PolyFamily};

type C = Complex64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    H,
    L,
    J,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Variant {
    ConventionalSi,
    Ces { b: f64, beta: f64 },
    KreinAdler { d: u32 },
}

/// Declarative description of a quantum system; the single input record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemSpec {
    pub family: Family,
    pub variant: Variant,
    pub g: Option<f64>,
    pub h: Option<f64>,
    pub hbar: f64,
    pub omega: f64,
    pub ces_j_prefactor: CesJPrefactor,
}

impl SystemSpec {
    pub fn si(family: Family) -> SystemSpec {
        SystemSpec {
            family,
            variant: Variant::ConventionalSi,
            g: None,
            h: None,
            hbar: 1.0,
            omega: 1.0,
            ces_j_prefactor: CesJPrefactor::default(),
        }
    }

    pub fn ces(family: Family, b: f64, beta: f64) -> SystemSpec {
        SystemSpec { variant: Variant::Ces { b, beta }, ..SystemSpec::si(family) }
    }

    pub fn krein_adler(family: Family, d: u32) -> SystemSpec {
        SystemSpec { variant: Variant::KreinAdler { d }, ..SystemSpec::si(family) }
    }

    pub fn with_g(mut self, g: f64) -> SystemSpec {
        self.g = Some(g);
        self
    }

    pub fn with_h(mut self, h: f64) -> SystemSpec {
        self.h = Some(h);
        self
    }

    pub fn with_scales(mut self, hbar: f64, omega: f64) -> SystemSpec {
        self.hbar = hbar;
        self.omega = omega;
        self
    }
}

/// Level label; `breve` maps the node count to the original-system index for
/// Krein-Adler spectra (n below d, n + 2 from d on).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelIndex {
    pub n: u32,
}

impl LevelIndex {
    pub fn new(n: u32) -> LevelIndex {
        LevelIndex { n }
    }

    pub fn breve(&self, d: u32) -> u32 {
        if self.n < d {
            self.n
        } else {
            self.n + 2
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Kind {
    SiH,
    SiL { g: f64 },
    SiJ { g: f64, h: f64 },
    CesH { b: f64, beta: f64 },
    CesL { g: f64, b: f64, beta: f64 },
    CesJ { g: f64, h: f64, b: f64, beta: f64, pref: CesJPrefactor },
    KaH { d: u32 },
    KaL { g: f64 },
    KaJ { g: f64, h: f64 },
}

/// A validated, evaluatable system.
#[derive(Debug, Clone)]
pub struct System {
    spec: SystemSpec,
    kind: Kind,
}

const NODELESS_GRID: usize = 2000;

/// Validates every parameter inequality and numerically checks nodelessness
/// of the auxiliary function (u for the deformations, the pair Wronskian for
/// Krein-Adler) on a grid spanning the natural domain.
pub fn build_system(spec: &SystemSpec) -> Result<System> {
    if spec.hbar <= 0.0 {
        return Err(Error::Constraint(format!("hbar must be positive, got {}", spec.hbar)));
    }
    if spec.omega <= 0.0 && matches!(spec.family, Family::H | Family::L) {
        return Err(Error::Constraint(format!("omega must be positive, got {}", spec.omega)));
    }
    let g = spec.g;
    let h = spec.h;
    let need_g = |f: &str| -> Result<f64> {
        let v = g.ok_or_else(|| Error::Constraint(format!("{f} family requires g")))?;
        if v > 0.5 {
            Ok(v)
        } else {
            Err(Error::Constraint(format!("g = {v} must exceed 1/2")))
        }
    };
    let need_h = || -> Result<f64> {
        let v = h.ok_or_else(|| Error::Constraint("J family requires h".into()))?;
        if v > 0.5 {
            Ok(v)
        } else {
            Err(Error::Constraint(format!("h = {v} must exceed 1/2")))
        }
    };
    let kind = match (spec.family, spec.variant) {
        (Family::H, Variant::ConventionalSi) => Kind::SiH,
        (Family::L, Variant::ConventionalSi) => Kind::SiL { g: need_g("L")? },
        (Family::J, Variant::ConventionalSi) => Kind::SiJ { g: need_g("J")?, h: need_h()? },
        (Family::H, Variant::Ces { b, beta }) => {
            if b <= -2.0 {
                return Err(Error::Constraint(format!("CES-H requires b > -2, got b = {b}")));
            }
            let bound = 2.0 * gamma_fn(b / 4.0 + 1.0)? / gamma_fn(b / 4.0 + 0.5)?;
            if beta.abs() >= bound {
                return Err(Error::Constraint(format!(
                    "CES-H requires |beta| < 2 Gamma(b/4+1)/Gamma(b/4+1/2) = {bound}, got beta = {beta}"
                )));
            }
            Kind::CesH { b, beta }
        }
        (Family::L, Variant::Ces { b, beta }) => {
            let g = need_g("L")?;
            if b <= -4.0 {
                return Err(Error::Constraint(format!("CES-L requires b > -4, got b = {b}")));
            }
            let ratio = gamma_fn(0.5 - g).and_then(|num| {
                gamma_fn(0.5 - g + b / 4.0).map(|den| num / den)
            });
            match ratio {
                Ok(r) => {
                    let bound = -r * gamma_fn(b / 4.0 + 1.0)? / gamma_fn(1.5 + g)?;
                    if beta <= bound {
                        return Err(Error::Constraint(format!(
                            "CES-L requires beta > {bound}, got beta = {beta}"
                        )));
                    }
                }
                Err(e) => {
                    return Err(Error::Constraint(format!(
                        "CES-L bound formula degenerate at g = {g}, b = {b}: {e}"
                    )))
                }
            }
            Kind::CesL { g, b, beta }
        }
        (Family::J, Variant::Ces { b, beta }) => {
            let g = need_g("J")?;
            let h = need_h()?;
            if b <= -4.0 * (g + h + 1.0) {
                return Err(Error::Constraint(format!(
                    "CES-J requires b > -4(g+h+1) = {}, got b = {b}",
                    -4.0 * (g + h + 1.0)
                )));
            }
            if b > (g + h) * (g + h) {
                return Err(Error::Constraint(format!(
                    "CES-J supported for b <= (g+h)^2 = {} (real hypergeometric parameters), got b = {b}",
                    (g + h) * (g + h)
                )));
            }
            if 1.0 - beta <= 0.0 {
                return Err(Error::Constraint(format!("CES-J requires beta < 1, got beta = {beta}")));
            }
            let s = ((g + h) * (g + h) - b).sqrt();
            let bound = (|| -> Result<f64> {
                let t1 = gamma_fn(0.5 - h)? / gamma_fn(1.5 + h)?;
                let t2 = gamma_fn(1.0 + (g + h) / 2.0 + s / 2.0)?
                    * gamma_fn(1.0 + (g + h) / 2.0 - s / 2.0)?;
                let t3 = gamma_fn(0.5 + (g - h) / 2.0 + s / 2.0)?
                    * gamma_fn(0.5 + (g - h) / 2.0 - s / 2.0)?;
                Ok(-t1 * t2 / t3)
            })();
            match bound {
                Ok(bound) => {
                    if beta <= bound {
                        return Err(Error::Constraint(format!(
                            "CES-J requires beta > {bound}, got beta = {beta}"
                        )));
                    }
                }
                Err(e) => {
                    return Err(Error::Constraint(format!(
                        "CES-J bound formula degenerate at g = {g}, h = {h}, b = {b}: {e}"
                    )))
                }
            }
            Kind::CesJ { g, h, b, beta, pref: spec.ces_j_prefactor }
        }
        (family, Variant::KreinAdler { d }) => {
            if d < 1 {
                return Err(Error::Constraint("Krein-Adler requires d >= 1".into()));
            }
            match family {
                Family::H => Kind::KaH { d },
                Family::L => Kind::KaL { g: need_g("L")? },
                Family::J => Kind::KaJ { g: need_g("J")?, h: need_h()? },
            }
        }
    };
    let system = System { spec: *spec, kind };
    system.check_nodeless()?;
    Ok(system)
}

impl System {
    pub fn spec(&self) -> &SystemSpec {
        &self.spec
    }

    pub fn family(&self) -> Family {
        self.spec.family
    }

    pub fn is_ces(&self) -> bool {
        matches!(self.spec.variant, Variant::Ces { .. })
    }

    pub fn krein_adler_d(&self) -> Option<u32> {
        match self.spec.variant {
            Variant::KreinAdler { d } => Some(d),
            _ => None,
        }
    }

    /// Node-count to original-index map; identity except for Krein-Adler.
    pub fn breve_n(&self, n: u32) -> u32 {
        match self.spec.variant {
            Variant::KreinAdler { d } => LevelIndex::new(n).breve(d),
            _ => n,
        }
    }

    fn gh(&self) -> (f64, f64) {
        match self.kind {
            Kind::SiL { g } | Kind::CesL { g, .. } | Kind::KaL { g } => (g, 0.0),
            Kind::SiJ { g, h } | Kind::CesJ { g, h, .. } | Kind::KaJ { g, h, .. } => (g, h),
            _ => (0.0, 0.0),
        }
    }

    /// Dimensional eigenvalue of the level.
    pub fn energy(&self, level: LevelIndex) -> f64 {
        let n = level.n;
        let hw = self.spec.hbar * self.spec.omega;
        let h2 = self.spec.hbar * self.spec.hbar;
        let (g, h) = self.gh();
        let si = |m: u32| -> f64 {
            match self.spec.family {
                Family::H => 2.0 * m as f64 * hw,
                Family::L => 4.0 * m as f64 * hw,
                Family::J => 4.0 * h2 * m as f64 * (m as f64 + g + h),
            }
        };
        match self.spec.variant {
            Variant::ConventionalSi => si(n),
            Variant::Ces { b, .. } => {
                if n == 0 {
                    0.0
                } else {
                    let shift = match self.spec.family {
                        Family::H | Family::L => b * hw,
                        Family::J => b * h2,
                    };
                    si(n) + shift
                }
            }
            Variant::KreinAdler { d } => si(LevelIndex::new(n).breve(d)),
        }
    }

    /// Dimensionless level constant that enters the natural-variable
    /// integrand: H: 2n (+b); L: n (+b/4); J: n(n+g+h) (+b/4); Krein-Adler
    /// uses the breve index.
    pub fn level_constant(&self, n: u32) -> f64 {
        let (g, h) = self.gh();
        let m = self.breve_n(n) as f64;
        let base = match self.spec.family {
            Family::H => 2.0 * m,
            Family::L => m,
            Family::J => m * (m + g + h),
        };
        match self.spec.variant {
            Variant::ConventionalSi | Variant::KreinAdler { .. } => base,
            Variant::Ces { b, .. } => {
                let shift = match self.spec.family {
                    Family::H => b,
                    Family::L | Family::J => b / 4.0,
                };
                // the n = 0 level sits at the bottom of the well, not at base+shift
                if n == 0 {
                    0.0
                } else {
                    base + shift
                }
            }
        }
    }

    /// Trial level constant for a given dimensional energy (used by the
    /// spectrum inversion).
    pub fn level_constant_of_energy(&self, e: f64) -> f64 {
        let hw = self.spec.hbar * self.spec.omega;
        let h2 = self.spec.hbar * self.spec.hbar;
        match self.spec.family {
            Family::H => e / hw,
            Family::L => e / (4.0 * hw),
            Family::J => e / (4.0 * h2),
        }
    }

    /// Scan domain of the natural coordinate, wide enough to contain every
    /// turning point at level constant c.
    pub fn scan_domain(&self, c: f64) -> ScanDomain {
        let (g, _h) = self.gh();
        match self.spec.family {
            Family::H => {
                let s = c.max(1.0).sqrt() + 5.0;
                ScanDomain::Line { lo: -s, hi: s }
            }
            Family::L => {
                // W~^2 grows like z/4 upward and like g^2/(4z) toward z = 0
                let hi = 8.0 * (c.abs() + g + 5.0);
                ScanDomain::LogLine { lo: 1e-9, hi }
            }
            Family::J => ScanDomain::Line { lo: -1.0 + 1e-9, hi: 1.0 - 1e-9 },
        }
    }

    /// Integration measure of the natural variable.
    pub fn measure(&self, t: f64) -> f64 {
        match self.spec.family {
            Family::H => 1.0,
            Family::L => 1.0 / t.sqrt(),
            Family::J => 1.0 / (1.0 - t * t).sqrt(),
        }
    }

    fn in_open_domain(&self, t: f64) -> bool {
        match self.spec.family {
            Family::H => t.is_finite(),
            Family::L => t > 0.0,
            Family::J => -1.0 < t && t < 1.0,
        }
    }

    /// u-function of the deformed families and its first derivative in the
    /// natural coordinate.
    pub fn u_function(&self, t: C) -> Result<(C, C)> {
        match self.kind {
            Kind::CesH { b, beta } => ces::u_h(b, beta, t),
            Kind::CesL { g, b, beta } => ces::u_l(g, b, beta, t),
            Kind::CesJ { g, h, b, beta, pref } => ces::u_j(g, h, b, beta, pref, t),
            _ => Err(Error::Unsupported(
                "u-function exists only for the deformed (CES) variants".into(),
            )),
        }
    }

    /// u, u', u'', u''' of the line-family deformation at complex xi, the
    /// higher orders closed through the u-equation.
    pub fn u_jet4(&self, t: C) -> Result<(C, C, C, C)> {
        match self.kind {
            Kind::CesH { b, beta } => {
                let (u, du) = ces::u_h(b, beta, t)?;
                let (d2, d3) = ces::u_h_higher(b, t, u, du);
                Ok((u, du, d2, d3))
            }
            _ => Err(Error::Unsupported(
                "the u-jet is defined for the deformed line family".into(),
            )),
        }
    }

    /// Log-derivative of the conventional ground state in the natural
    /// coordinate: -d ln phi_0 / dt.
    fn si_w_tilde(&self, t: f64) -> f64 {
        let (g, h) = self.gh();
        match self.spec.family {
            Family::H => t,
            Family::L => 0.5 * t.sqrt() - 0.5 * g / t.sqrt(),
            Family::J => {
                0.5 * g * ((1.0 + t) / (1.0 - t)).sqrt() - 0.5 * h * ((1.0 - t) / (1.0 + t)).sqrt()
            }
        }
    }

    /// Reduced superpotential in the natural variable,
    /// W~ = -(measure-normalized) d/dt ln psi_0.
    pub fn superpotential_w(&self, t: f64) -> Result<f64> {
        if !self.in_open_domain(t) {
            return Err(Error::Domain(t));
        }
        match self.kind {
            Kind::SiH | Kind::SiL { .. } | Kind::SiJ { .. } => Ok(self.si_w_tilde(t)),
            Kind::CesH { .. } => {
                let (u, du) = self.u_function(C::new(t, 0.0))?;
                Ok(t + (du / u).re)
            }
            Kind::CesL { .. } => {
                let (u, du) = self.u_function(C::new(t, 0.0))?;
                Ok(self.si_w_tilde(t) + t.sqrt() * (du / u).re)
            }
            Kind::CesJ { .. } => {
                let (u, du) = self.u_function(C::new(t, 0.0))?;
                Ok(self.si_w_tilde(t) + (1.0 - t * t).sqrt() * (du / u).re)
            }
            Kind::KaH { d } => {
                let xi = C::new(t, 0.0);
                let (w2, dw2, _) = hermite_w2_jet(d, xi);
                let (w3, dw3, _) = hermite_w3_jet(d, 0, xi);
                Ok(t - (dw3 / w3).re + (dw2 / w2).re)
            }
            Kind::KaL { .. } => {
                // W~(z) = -sqrt(z) d/dz ln psi = -(1/2) d/dx ln psi at x = sqrt z
                let dln = self.ka_phi_logderiv_x(0, C::new(t.sqrt(), 0.0))?;
                Ok(-0.5 * dln.re)
            }
            Kind::KaJ { .. } => {
                // W~(y) = -sqrt(1-y^2) d/dy ln psi = +(1/2) d/dx ln psi at x = arccos(y)/2
                let x = 0.5 * t.acos();
                let dln = self.ka_phi_logderiv_x(0, C::new(x, 0.0))?;
                Ok(0.5 * dln.re)
            }
        }
    }

    /// d/dx ln psi_{D;n}(x) for the eigenfunction-based Krein-Adler route.
    fn ka_phi_logderiv_x(&self, n: u32, x: C) -> Result<C> {
        let (psi, dpsi) = self.ka_phi_psi_x(n, x)?;
        if psi.norm() < 1e-280 {
            return Err(Error::NearNode(psi.norm()));
        }
        Ok(dpsi / psi)
    }

    /// Krein-Adler wave function and x-derivative via eigenfunction
    /// Wronskians (radial and trigonometric families).
    fn ka_phi_psi_x(&self, n: u32, x: C) -> Result<(C, C)> {
        let d = self.krein_adler_d().expect("Krein-Adler variant");
        let nb = self.breve_n(n);
        let states = [
            self.si_phi_with_deriv_x(d, x)?,
            self.si_phi_with_deriv_x(d + 1, x)?,
            self.si_phi_with_deriv_x(nb, x)?,
        ];
        let w = phi_wronskians(states);
        let psi = w.w3 / w.w2;
        let dpsi = (w.dw3 * w.w2 - w.w3 * w.dw2) / (w.w2 * w.w2);
        Ok((psi, dpsi))
    }

    /// Conventional eigenfunction phi_n, its x-derivative, and natural energy
    /// (2m = hbar = omega = 1 units) at complex x.
    fn si_phi_with_deriv_x(&self, n: u32, x: C) -> Result<(C, C, f64)> {
        let (g, h) = self.gh();
        match self.spec.family {
            Family::H => {
                let e = (-x * x / 2.0).exp();
                let hn = hermite(n, x);
                let dhn = hermite_deriv(n, 1, x);
                Ok((e * hn, e * (dhn - x * hn), 2.0 * n as f64))
            }
            Family::L => {
                let z = x * x;
                let alpha = g - 0.5;
                let pref = (-z / 2.0).exp() * z.powf(g / 2.0);
                let ln = laguerre(n, alpha, z);
                let dln = orth_poly_deriv(PolyFamily::Laguerre { alpha }, n, z)?;
                let phi = pref * ln;
                // d/dx = 2x d/dz
                let dphi_dz = pref * ((C::new(g, 0.0) / (2.0 * z) - 0.5) * ln + dln);
                Ok((phi, 2.0 * x * dphi_dz, 4.0 * n as f64))
            }
            Family::J => {
                let y = (2.0 * x).cos();
                let s2x = (2.0 * x).sin();
                let (alpha, beta) = (g - 0.5, h - 0.5);
                let pref = (1.0 - y).powf(g / 2.0) * (1.0 + y).powf(h / 2.0);
                let pn = jacobi(n, alpha, beta, y);
                let dpn = orth_poly_deriv(PolyFamily::Jacobi { alpha, beta }, n, y)?;
                let phi = pref * pn;
                let dphi_dy =
                    pref * ((-g / (2.0 * (1.0 - y)) + h / (2.0 * (1.0 + y))) * pn + dpn);
                // d/dx = -2 sin(2x) d/dy
                Ok((phi, -2.0 * s2x * dphi_dy, 4.0 * n as f64 * (n as f64 + g + h)))
            }
        }
    }

    /// Wave function at the natural coordinate t (complex), without
    /// normalization.
    pub fn wavefunction(&self, level: LevelIndex, t: C) -> Result<C> {
        Ok(self.wavefunction_with_deriv(level, t)?.0)
    }

    /// Wave function and its derivative with respect to the natural
    /// coordinate.
    pub fn wavefunction_with_deriv(&self, level: LevelIndex, t: C) -> Result<(C, C)> {
        let n = level.n;
        match self.kind {
            Kind::SiH | Kind::SiL { .. } | Kind::SiJ { .. } => {
                let x = self.x_of_natural(t);
                let (phi, dphi_dx, _) = self.si_phi_with_deriv_x(n, x)?;
                Ok((phi, dphi_dx / self.dnatural_dx(x, t)))
            }
            Kind::CesH { b, .. } => {
                let (u, du) = self.u_function(t)?;
                if n == 0 {
                    let phi0 = (-t * t / 2.0).exp();
                    let dphi0 = -t * phi0;
                    Ok((phi0 / u, (dphi0 * u - phi0 * du) / (u * u)))
                } else {
                    // psi_n = e^(-xi^2/2) (u H_n + u' H_{n-1}) / u
                    let (d2u, _) = ces::u_h_higher(b, t, u, du);
                    let hn = hermite(n, t);
                    let hn1 = hermite(n - 1, t);
                    let hn2 = if n >= 2 { hermite(n - 2, t) } else { C::new(0.0, 0.0) };
                    let gn = u * hn + du * hn1;
                    let dgn = du * hn
                        + (2.0 * n as f64 * u + d2u) * hn1
                        + 2.0 * (n as f64 - 1.0) * du * hn2;
                    let e = (-t * t / 2.0).exp();
                    let psi = e * gn / u;
                    let dpsi = e * (-t * gn / u + dgn / u - gn * du / (u * u));
                    Ok((psi, dpsi))
                }
            }
            Kind::CesL { .. } | Kind::CesJ { .. } => {
                if n == 0 {
                    let (u, du) = self.u_function(t)?;
                    let (phi0, dphi0) = self.si_phi0_natural(t)?;
                    Ok((phi0 / u, (dphi0 * u - phi0 * du) / (u * u)))
                } else {
                    Err(Error::Unsupported(
                        "excited deformed states are implemented for the line family only".into(),
                    ))
                }
            }
            Kind::KaH { d } => {
                let nb = self.breve_n(n);
                let (w2, dw2, _) = hermite_w2_jet(d, t);
                let (w3, dw3, _) = hermite_w3_jet(d, nb, t);
                let e = (-t * t / 2.0).exp();
                let psi = e * w3 / w2;
                let dpsi = e * (-t * w3 / w2 + (dw3 * w2 - w3 * dw2) / (w2 * w2));
                Ok((psi, dpsi))
            }
            Kind::KaL { .. } | Kind::KaJ { .. } => {
                let x = self.x_of_natural(t);
                let (psi, dpsi_dx) = self.ka_phi_psi_x(n, x)?;
                Ok((psi, dpsi_dx / self.dnatural_dx(x, t)))
            }
        }
    }

    /// phi_0 and d phi_0/dt in the natural coordinate (deformed ground states).
    fn si_phi0_natural(&self, t: C) -> Result<(C, C)> {
        let (g, h) = self.gh();
        match self.spec.family {
            Family::H => {
                let phi = (-t * t / 2.0).exp();
                Ok((phi, -t * phi))
            }
            Family::L => {
                let phi = (-t / 2.0).exp() * t.powf(g / 2.0);
                Ok((phi, phi * (C::new(g, 0.0) / (2.0 * t) - 0.5)))
            }
            Family::J => {
                let phi = (1.0 - t).powf(g / 2.0) * (1.0 + t).powf(h / 2.0);
                let dln = -g / (2.0 * (1.0 - t)) + h / (2.0 * (1.0 + t));
                Ok((phi, phi * dln))
            }
        }
    }

    /// Physical coordinate for a natural coordinate value (natural units).
    pub fn x_of_natural(&self, t: C) -> C {
        match self.spec.family {
            Family::H => t,
            Family::L => t.sqrt(),
            Family::J => 0.5 * t.acos(),
        }
    }

    /// dt/dx at the physical point x with natural coordinate t.
    pub fn dnatural_dx(&self, x: C, t: C) -> C {
        match self.spec.family {
            Family::H => C::new(1.0, 0.0),
            Family::L => 2.0 * x,
            Family::J => {
                let _ = t;
                -2.0 * (2.0 * x).sin()
            }
        }
    }

    fn check_nodeless(&self) -> Result<()> {
        let grid: Vec<f64> = match self.spec.family {
            Family::H => (0..=NODELESS_GRID)
                .map(|i| -12.0 + 24.0 * i as f64 / NODELESS_GRID as f64)
                .collect(),
            Family::L => (0..=NODELESS_GRID)
                .map(|i| {
                    let s = -21.0 + 28.0 * i as f64 / NODELESS_GRID as f64;
                    s.exp()
                })
                .collect(),
            Family::J => (0..=NODELESS_GRID)
                .map(|i| {
                    let s = -10.0 + 20.0 * i as f64 / NODELESS_GRID as f64;
                    s.tanh()
                })
                .collect(),
        };
        let values: Box<dyn Fn(f64) -> Result<f64>> = match self.kind {
            Kind::SiH | Kind::SiL { .. } | Kind::SiJ { .. } => return Ok(()),
            Kind::CesH { .. } | Kind::CesL { .. } | Kind::CesJ { .. } => {
                Box::new(move |t: f64| Ok(self.u_function(C::new(t, 0.0))?.0.re))
            }
            Kind::KaH { d } => Box::new(move |t: f64| {
                Ok(hermite_w2_jet(d, C::new(t, 0.0)).0.re)
            }),
            // the pair Wronskian shares the positive factor phi_0^2, which
            // underflows far out; its sign equals that of the Wronskian of
            // the polynomial parts
            Kind::KaL { g } => Box::new(move |t: f64| {
                let d = self.krein_adler_d().unwrap();
                let z = C::new(t, 0.0);
                let alpha = g - 0.5;
                let p0 = laguerre(d, alpha, z);
                let p1 = laguerre(d + 1, alpha, z);
                let dp0 = orth_poly_deriv(PolyFamily::Laguerre { alpha }, d, z)?;
                let dp1 = orth_poly_deriv(PolyFamily::Laguerre { alpha }, d + 1, z)?;
                Ok((p0 * dp1 - dp0 * p1).re)
            }),
            Kind::KaJ { g, h } => Box::new(move |t: f64| {
                let d = self.krein_adler_d().unwrap();
                let y = C::new(t, 0.0);
                let (alpha, beta) = (g - 0.5, h - 0.5);
                let fam = PolyFamily::Jacobi { alpha, beta };
                let p0 = jacobi(d, alpha, beta, y);
                let p1 = jacobi(d + 1, alpha, beta, y);
                let dp0 = orth_poly_deriv(fam, d, y)?;
                let dp1 = orth_poly_deriv(fam, d + 1, y)?;
                Ok((p0 * dp1 - dp0 * p1).re)
            }),
        };
        let mut prev: Option<(f64, f64)> = None;
        for &t in &grid {
            let v = values(t)?;
            if let Some((tp, vp)) = prev {
                if vp * v < 0.0 || v == 0.0 {
                    let _ = tp;
                    return Err(Error::Nodelessness { coordinate: t, value: v });
                }
            }
            prev = Some((t, v));
        }
        Ok(())
    }
}
