//! Numerical laboratory for SWKB quantization integrals, residual
//! corrections, and quantum Hamilton-Jacobi contour diagnostics of
//! shape-invariant, conditionally-exactly-solvable, and Krein-Adler
//! quantum systems.

pub mod acceptance;
pub mod complexscan;
pub mod error;
pub mod parallel;
pub mod quadrature;
pub mod residual;
pub mod specfun;
pub mod swkb;
pub mod systems;

pub use error::{Error, Result};
pub use systems::{build_system, Family, LevelIndex, System, SystemSpec, Variant};
