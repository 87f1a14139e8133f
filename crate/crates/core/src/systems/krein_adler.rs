//! Wronskian machinery for the Krein-Adler deletion of the consecutive pair
//! {d, d+1}.
//!
//! For the line family the Wronskians reduce to Hermite-polynomial
//! determinants. For the radial and trigonometric families the rows with
//! second derivatives are eliminated through the eigenvalue equation
//! f'' = (V - E) f, which leaves determinants in f and f' only.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::specfun::hermite_deriv;

type C = Complex64;

fn det2(m: [[C; 2]; 2]) -> C {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn det3(m: [[C; 3]; 3]) -> C {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// det of the 2x2 matrix with rows H^(o)(xi) for o in `orders`, columns
/// n in {d, d+1}.
pub fn hermite_w2_orders(d: u32, orders: [u32; 2], xi: C) -> C {
    let cols = [d, d + 1];
    let mut m = [[C::new(0.0, 0.0); 2]; 2];
    for (i, &o) in orders.iter().enumerate() {
        for (j, &n) in cols.iter().enumerate() {
            m[i][j] = hermite_deriv(n, o, xi);
        }
    }
    det2(m)
}

/// det of the 3x3 matrix with rows H^(o)(xi), columns n in {d, d+1, extra}.
pub fn hermite_w3_orders(d: u32, extra: u32, orders: [u32; 3], xi: C) -> C {
    let cols = [d, d + 1, extra];
    let mut m = [[C::new(0.0, 0.0); 3]; 3];
    for (i, &o) in orders.iter().enumerate() {
        for (j, &n) in cols.iter().enumerate() {
            m[i][j] = hermite_deriv(n, o, xi);
        }
    }
    det3(m)
}

/// Hermite Wronskian W[H_d, H_{d+1}] or W[H_d, H_{d+1}, H_extra] at xi.
pub fn ka_wronskian(d: u32, extra: Option<u32>, xi: C) -> Result<C> {
    if d < 1 {
        return Err(Error::Constraint("Krein-Adler index d must be >= 1".into()));
    }
    match extra {
        None => Ok(hermite_w2_orders(d, [0, 1], xi)),
        Some(n) => {
            if n == d || n == d + 1 {
                return Err(Error::Constraint(format!(
                    "extra index {n} collides with the deleted pair {{{d}, {}}}",
                    d + 1
                )));
            }
            Ok(hermite_w3_orders(d, n, [0, 1, 2], xi))
        }
    }
}

/// Value and first two derivatives of W[H_d, H_{d+1}].
pub fn hermite_w2_jet(d: u32, xi: C) -> (C, C, C) {
    let w = hermite_w2_orders(d, [0, 1], xi);
    let dw = hermite_w2_orders(d, [0, 2], xi);
    let d2w = hermite_w2_orders(d, [1, 2], xi) + hermite_w2_orders(d, [0, 3], xi);
    (w, dw, d2w)
}

/// Value and first two derivatives of W[H_d, H_{d+1}, H_extra].
pub fn hermite_w3_jet(d: u32, extra: u32, xi: C) -> (C, C, C) {
    let w = hermite_w3_orders(d, extra, [0, 1, 2], xi);
    let dw = hermite_w3_orders(d, extra, [0, 1, 3], xi);
    let d2w =
        hermite_w3_orders(d, extra, [0, 2, 3], xi) + hermite_w3_orders(d, extra, [0, 1, 4], xi);
    (w, dw, d2w)
}

/// Eigenfunction-based Wronskian data for one x: value and x-derivative of
/// both the pair Wronskian and the triple Wronskian with state `extra`.
///
/// `states` supplies (f_i, f_i', E_i) for i = d, d+1, extra in that order.
pub struct PhiWronskians {
    pub w2: C,
    pub dw2: C,
    pub w3: C,
    pub dw3: C,
}

pub fn phi_wronskians(states: [(C, C, f64); 3]) -> PhiWronskians {
    let [(fd, dfd, ed), (fd1, dfd1, ed1), (fe, dfe, ee)] = states;
    let w2 = fd * dfd1 - dfd * fd1;
    // d/dx W2 = det(f, f'') = (E_d - E_{d+1}) f_d f_{d+1} after eliminating V
    let dw2 = (ed - ed1) * fd * fd1;
    let row_f = [fd, fd1, fe];
    let row_df = [dfd, dfd1, dfe];
    let row_ef = [ed * fd, ed1 * fd1, ee * fe];
    let row_edf = [ed * dfd, ed1 * dfd1, ee * dfe];
    let w3 = -det3([row_f, row_df, row_ef]);
    let dw3 = -det3([row_f, row_df, row_edf]);
    PhiWronskians { w2, dw2, w3, dw3 }
}
