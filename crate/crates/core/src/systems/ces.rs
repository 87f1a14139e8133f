//! Auxiliary u-functions of the conditionally-exactly-solvable deformations,
//! as two-term hypergeometric combinations in the natural coordinate of each
//! family, with first derivatives from the parameter-shift identities.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::{hyp1f1, hyp2f1};

type C = Complex64;

/// Prefactor convention for the second solution of the J-family u-equation.
///
/// `ZetaPower` is ((1+y)/2)^(h+1/2), the hypergeometric-regular second
/// solution at the singular endpoint; `OddYPower` is the odd extension
/// sign(y)|y|^(2h+1), kept as a comparison seam (real y only, and not an
/// exact solution of the u-equation).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CesJPrefactor {
    #[default]
    ZetaPower,
    OddYPower,
}

/// u and du/dxi for the line family: u = 1F1(-b/4, 1/2; -xi^2) + beta xi 1F1(1/2 - b/4, 3/2; -xi^2).
pub fn u_h(b: f64, beta: f64, xi: C) -> Result<(C, C)> {
    let (a1, c1) = (-b / 4.0, 0.5);
    let (a2, c2) = (0.5 - b / 4.0, 1.5);
    let z = -xi * xi;
    let f1 = hyp1f1(a1, c1, z)?;
    let df1 = -2.0 * xi * (a1 / c1) * hyp1f1(a1 + 1.0, c1 + 1.0, z)?;
    let mut u = f1;
    let mut du = df1;
    if beta != 0.0 {
        let f2 = hyp1f1(a2, c2, z)?;
        let df2 = -2.0 * xi * (a2 / c2) * hyp1f1(a2 + 1.0, c2 + 1.0, z)?;
        u += beta * xi * f2;
        du += beta * (f2 + xi * df2);
    }
    Ok((u, du))
}

/// Second and third xi-derivatives of u_h via the u-equation
/// u'' + 2 xi u' - b u = 0 (natural units).
pub fn u_h_higher(b: f64, xi: C, u: C, du: C) -> (C, C) {
    let d2 = -2.0 * xi * du + b * u;
    let d3 = -2.0 * du - 2.0 * xi * d2 + b * du;
    (d2, d3)
}

/// u and du/dz for the radial family:
/// u = 1F1(-b/4, 1/2-g; -z) + beta z^(g+1/2) 1F1(1/2+g-b/4, 3/2+g; -z).
pub fn u_l(g: f64, b: f64, beta: f64, z: C) -> Result<(C, C)> {
    let (a1, c1) = (-b / 4.0, 0.5 - g);
    let (a2, c2) = (0.5 + g - b / 4.0, 1.5 + g);
    let f1 = hyp1f1(a1, c1, -z)?;
    let df1 = -(a1 / c1) * hyp1f1(a1 + 1.0, c1 + 1.0, -z)?;
    let mut u = f1;
    let mut du = df1;
    if beta != 0.0 {
        let p = g + 0.5;
        let zp = z.powf(p);
        let f2 = hyp1f1(a2, c2, -z)?;
        let df2 = -(a2 / c2) * hyp1f1(a2 + 1.0, c2 + 1.0, -z)?;
        u += beta * zp * f2;
        du += beta * (p * z.powf(p - 1.0) * f2 + zp * df2);
    }
    Ok((u, du))
}

/// u and du/dy for the trigonometric family, in zeta = (1+y)/2.
pub fn u_j(
    g: f64,
    h: f64,
    b: f64,
    beta: f64,
    prefactor: CesJPrefactor,
    y: C,
) -> Result<(C, C)> {
    let disc = (g + h) * (g + h) - b;
    if disc < 0.0 {
        return Err(Error::Constraint(format!(
            "J-family deformation requires b <= (g+h)^2; got b = {b}, (g+h)^2 = {}",
            (g + h) * (g + h)
        )));
    }
    let s = disc.sqrt();
    let (a1, b1, c1) = (-(g + h) / 2.0 - s / 2.0, -(g + h) / 2.0 + s / 2.0, 0.5 - h);
    let (a2, b2, c2) = (a1 + h + 0.5, b1 + h + 0.5, 1.5 + h);
    let zeta = (1.0 + y) / 2.0;
    let f1 = hyp2f1(a1, b1, c1, zeta)?;
    // d/dy = (1/2) d/dzeta
    let df1 = 0.5 * (a1 * b1 / c1) * hyp2f1(a1 + 1.0, b1 + 1.0, c1 + 1.0, zeta)?;
    let mut u = f1;
    let mut du = df1;
    if beta != 0.0 {
        let f2 = hyp2f1(a2, b2, c2, zeta)?;
        let df2 = 0.5 * (a2 * b2 / c2) * hyp2f1(a2 + 1.0, b2 + 1.0, c2 + 1.0, zeta)?;
        let (p, dp) = match prefactor {
            CesJPrefactor::ZetaPower => {
                let e = h + 0.5;
                (zeta.powf(e), 0.5 * e * zeta.powf(e - 1.0))
            }
            CesJPrefactor::OddYPower => {
                if y.im != 0.0 {
                    return Err(Error::Unsupported(
                        "odd-power prefactor is defined on the real axis only".into(),
                    ));
                }
                let yr = y.re;
                let e = 2.0 * h + 1.0;
                let val = yr.signum() * yr.abs().powf(e);
                let der = e * yr.abs().powf(e - 1.0);
                (C::new(val, 0.0), C::new(der, 0.0))
            }
        };
        u += beta * p * f2;
        du += beta * (dp * f2 + p * df2);
    }
    Ok((u, du))
}
