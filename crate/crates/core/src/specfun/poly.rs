//! Orthogonal polynomials (Hermite, Laguerre, Jacobi) for complex arguments,
//! by three-term recurrence, with first derivatives via the standard
//! parameter-shift identities.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PolyFamily {
    Hermite,
    Laguerre { alpha: f64 },
    Jacobi { alpha: f64, beta: f64 },
}

impl PolyFamily {
    fn validate(&self) -> Result<()> {
        match *self {
            PolyFamily::Hermite => Ok(()),
            PolyFamily::Laguerre { alpha } => {
                if alpha > -1.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidParams(format!("Laguerre alpha = {alpha} <= -1")))
                }
            }
            PolyFamily::Jacobi { alpha, beta } => {
                if alpha > -1.0 && beta > -1.0 {
                    Ok(())
                } else {
                    Err(Error::InvalidParams(format!(
                        "Jacobi alpha = {alpha}, beta = {beta}; both must exceed -1"
                    )))
                }
            }
        }
    }
}

pub fn hermite(n: u32, x: Complex64) -> Complex64 {
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let mut prev = Complex64::new(1.0, 0.0);
    let mut cur = 2.0 * x;
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// j-th derivative of H_n: repeated application of H_n' = 2n H_{n-1}.
pub fn hermite_deriv(n: u32, j: u32, x: Complex64) -> Complex64 {
    if j > n {
        return Complex64::new(0.0, 0.0);
    }
    let mut factor = 1.0;
    for i in 0..j {
        factor *= 2.0 * (n - i) as f64;
    }
    factor * hermite(n - j, x)
}

pub fn laguerre(n: u32, alpha: f64, x: Complex64) -> Complex64 {
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let mut prev = Complex64::new(1.0, 0.0);
    let mut cur = Complex64::new(1.0 + alpha, 0.0) - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

pub fn jacobi(n: u32, alpha: f64, beta: f64, x: Complex64) -> Complex64 {
    if n == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let mut prev = Complex64::new(1.0, 0.0);
    let mut cur = (alpha + 1.0) + (alpha + beta + 2.0) * (x - 1.0) * 0.5;
    for k in 2..=n {
        let kf = k as f64;
        let ab = alpha + beta;
        let c1 = 2.0 * kf * (kf + ab) * (2.0 * kf + ab - 2.0);
        let c2 = 2.0 * kf + ab - 1.0;
        let c3 = (2.0 * kf + ab) * (2.0 * kf + ab - 2.0);
        let c4 = alpha * alpha - beta * beta;
        let c5 = 2.0 * (kf + alpha - 1.0) * (kf + beta - 1.0) * (2.0 * kf + ab);
        let next = (c2 * (c3 * x + c4) * cur - c5 * prev) / c1;
        prev = cur;
        cur = next;
    }
    cur
}

/// Value of the degree-n polynomial of the given family.
pub fn orth_poly(family: PolyFamily, n: u32, x: Complex64) -> Result<Complex64> {
    family.validate()?;
    Ok(match family {
        PolyFamily::Hermite => hermite(n, x),
        PolyFamily::Laguerre { alpha } => laguerre(n, alpha, x),
        PolyFamily::Jacobi { alpha, beta } => jacobi(n, alpha, beta, x),
    })
}

/// First derivative of the degree-n polynomial.
pub fn orth_poly_deriv(family: PolyFamily, n: u32, x: Complex64) -> Result<Complex64> {
    family.validate()?;
    if n == 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(match family {
        PolyFamily::Hermite => 2.0 * n as f64 * hermite(n - 1, x),
        PolyFamily::Laguerre { alpha } => -laguerre(n - 1, alpha + 1.0, x),
        PolyFamily::Jacobi { alpha, beta } => {
            0.5 * (n as f64 + alpha + beta + 1.0) * jacobi(n - 1, alpha + 1.0, beta + 1.0, x)
        }
    })
}
