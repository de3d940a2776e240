//! Exact quantum transmission and reflection coefficients for shape-invariant
//! potential barriers (parabolic, Morse, Eckart), computed three independent
//! ways:
//!
//! * closed-form coefficient formulas,
//! * the evolution-matrix (F-matrix) construction from asymptotic
//!   coefficient matrices,
//! * a direct numerical integration of the stationary Schrödinger equation
//!   (the oracle), which uses none of the analytic machinery.
//!
//! The narrative guide in `book/` walks through each layer; every code
//! snippet there runs as a documentation test.

pub mod asymptotics;
pub mod barriers;
pub mod error;
pub mod fmatrix;
pub mod numerics;
pub mod oracle;

pub use error::{Error, Result};
pub use num_complex::Complex64;
