//! Closed-form spectrum and eigenfunctions of both channels.
//!
//! The x-factor of every eigenfunction is
//! `N (tanh qx)^k (sech qx)^{1+δ} P_n^{(k−1/2, δ)}(1 − 2 tanh² qx)` with
//! energy `q²(2n+1+δ)(2n+2k+δ)`; only the coupling exponent `δ` depends on
//! the cross-section.

mod spectrum;
mod wavefunction;

pub use spectrum::{
    degeneracy_report, enumerate_spectrum, enumerate_spectrum_with_tol, Caps, DegeneracyClass, DegeneracyKind,
    QuantumNumbers, SpectrumEntry, DEGENERACY_REL_TOL,
};
pub use wavefunction::{chi_radial, chi_transverse, phi_x, psi, zeta_azimuthal, Point, RadialMode, XMode};

use crate::error::{Error, Result};
use crate::model::ChannelModel;
use crate::specfun::bessel_zero;

/// `δ = √((l+1)² + (m+1)²)` for the square cross-section.
pub fn delta_parallel(l: u32, m: u32) -> f64 {
    (delta_squared_parallel(l, m) as f64).sqrt()
}

/// The integer `(l+1)² + (m+1)²`.
pub fn delta_squared_parallel(l: u32, m: u32) -> u64 {
    let a = l as u64 + 1;
    let b = m as u64 + 1;
    a * a + b * b
}

/// `δ = j_{|m|,s} / (qR)` for the disk cross-section.
pub fn delta_cylinder(model: &ChannelModel, m: i32, s: u32) -> Result<f64> {
    let radius = model
        .radius()
        .ok_or_else(|| Error::InvalidParameter("delta_cylinder needs a cylindrical model".into()))?;
    if s == 0 {
        return Err(Error::InvalidParameter("radial index s is 1-based".into()));
    }
    let zero = bessel_zero(m.unsigned_abs(), s)?;
    Ok(zero.value / (model.q() * radius))
}

/// `E = q²(2n+1+δ)(2n+2k+δ)`.
pub fn energy(model: &ChannelModel, n: u32, delta: f64) -> f64 {
    let q = model.q();
    let nf = n as f64;
    q * q * (2.0 * nf + 1.0 + delta) * (2.0 * nf + 2.0 * model.k() + delta)
}
