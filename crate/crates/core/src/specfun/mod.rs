//! Special-function kernel: Jacobi polynomials, log-gamma, integer-order Bessel
//! functions of the first kind and their positive zeros, hyperbolic helpers.
//!
//! Everything here is a pure function of its arguments.

mod bessel;
mod gamma;
pub mod hyperbolic;
mod jacobi;

pub use bessel::{bessel_j, bessel_j_derivative, bessel_zero, bessel_zeros, mcmahon_guess, BesselZero};
pub use gamma::log_gamma;
pub use jacobi::{jacobi_eval, JacobiParams};
