//! Special-function kernel: Gamma, orthogonal polynomials, confluent and
//! Gauss hypergeometric functions, for real and complex arguments.
//!
//! Everything here is a pure function of its arguments.

mod dd;
mod gamma;
mod hyp;
mod poly;

pub use gamma::{gamma_fn, is_nonpositive_integer, rgamma};
pub use hyp::{hyp1f1, hyp1f1_deriv, hyp2f1, hyp2f1_deriv};
pub use poly::{hermite, hermite_deriv, jacobi, laguerre, orth_poly, orth_poly_deriv, PolyFamily};
