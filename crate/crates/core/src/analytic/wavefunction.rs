use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{ChannelModel, Geometry};
use crate::specfun::hyperbolic::sech_pow;
use crate::specfun::{bessel_j, bessel_zero, jacobi_eval, log_gamma, JacobiParams};

use super::{delta_cylinder, delta_parallel, QuantumNumbers};

const BOX_SLACK: f64 = 1e-12;

/// Normalised x-factor `φ_n` for a fixed coupling exponent `δ`.
///
/// The normalisation constant is kept as a logarithm so degrees well beyond
/// twenty do not overflow the Gamma ratios.
#[derive(Debug, Clone, Copy)]
pub struct XMode {
    q: f64,
    k: f64,
    delta: f64,
    jacobi: JacobiParams,
    ln_norm: f64,
}

impl XMode {
    pub fn new(model: &ChannelModel, n: u32, delta: f64) -> Result<Self> {
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(Error::InvalidParameter(format!("delta must be > 0, got {delta}")));
        }
        let (q, k) = (model.q(), model.k());
        let nf = n as f64;
        let jacobi = JacobiParams::new(k - 0.5, delta, n)?;
        let ln_norm_sq =
            (2.0 * q * (2.0 * nf + k + 0.5 + delta)).ln() + log_gamma(nf + 1.0)? + log_gamma(nf + k + 0.5 + delta)?
                - log_gamma(nf + 1.0 + delta)?
                - log_gamma(nf + k + 0.5)?;
        Ok(Self {
            q,
            k,
            delta,
            jacobi,
            ln_norm: 0.5 * ln_norm_sq,
        })
    }

    pub fn n(&self) -> u32 {
        self.jacobi.n
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn norm(&self) -> f64 {
        self.ln_norm.exp()
    }

    /// `φ_n(x)`; zero on `x <= 0`.
    pub fn eval(&self, x: f64) -> f64 {
        if !(x > 0.0) {
            return 0.0;
        }
        let qx = self.q * x;
        let t = qx.tanh();
        let arg = 1.0 - 2.0 * t * t;
        let poly = jacobi_eval(self.jacobi, arg).expect("argument lies in [-1, 1]");
        let envelope = (self.ln_norm + self.k * t.ln()).exp() * sech_pow(qx, 1.0 + self.delta);
        envelope * poly
    }
}

/// `φ_n(x)` for the given `δ`.
pub fn phi_x(model: &ChannelModel, n: u32, delta: f64, x: f64) -> Result<f64> {
    Ok(XMode::new(model, n, delta)?.eval(x))
}

/// Transverse box mode `χ_l(y)` on `|y| <= π/(2q)`: cosine for even `l`, sine
/// for odd `l`.
pub fn chi_transverse(l: u32, q: f64, y: f64) -> Result<f64> {
    let half = PI / (2.0 * q);
    if !(y.abs() <= half * (1.0 + BOX_SLACK)) {
        return Err(Error::Domain(format!("y = {y} outside the box |y| <= {half}")));
    }
    let amp = (2.0 * q / PI).sqrt();
    let arg = (l as f64 + 1.0) * q * y;
    Ok(if l.is_multiple_of(2) {
        amp * arg.cos()
    } else {
        amp * arg.sin()
    })
}

/// Normalised radial disk mode `χ_{|m|,s}(ρ)` with weight `ρ dρ`.
#[derive(Debug, Clone, Copy)]
pub struct RadialMode {
    order: u32,
    radius: f64,
    zero: f64,
    norm: f64,
}

impl RadialMode {
    pub fn new(model: &ChannelModel, m: i32, s: u32) -> Result<Self> {
        let radius = model
            .radius()
            .ok_or_else(|| Error::InvalidParameter("radial modes need a cylindrical model".into()))?;
        if s == 0 {
            return Err(Error::InvalidParameter("radial index s is 1-based".into()));
        }
        let order = m.unsigned_abs();
        let zero = bessel_zero(order, s)?.value;
        let norm = 2f64.sqrt() / (radius * bessel_j(order + 1, zero));
        Ok(Self {
            order,
            radius,
            zero,
            norm,
        })
    }

    /// `κ = j_{|m|,s} / R`.
    pub fn wavenumber(&self) -> f64 {
        self.zero / self.radius
    }

    pub fn eval(&self, rho: f64) -> Result<f64> {
        if !(rho >= 0.0 && rho <= self.radius * (1.0 + BOX_SLACK)) {
            return Err(Error::Domain(format!("rho = {rho} outside [0, {}]", self.radius)));
        }
        Ok(self.norm * bessel_j(self.order, self.zero * rho / self.radius))
    }
}

pub fn chi_radial(model: &ChannelModel, m: i32, s: u32, rho: f64) -> Result<f64> {
    RadialMode::new(model, m, s)?.eval(rho)
}

/// `ζ_m(φ) = e^{imφ} / √(2π)`.
pub fn zeta_azimuthal(m: i32, phi: f64) -> Complex64 {
    Complex64::from_polar(1.0 / (2.0 * PI).sqrt(), m as f64 * phi)
}

/// A point of the channel, in the coordinates native to its geometry.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Point {
    Cartesian { x: f64, y: f64, z: f64 },
    Cylindrical { x: f64, rho: f64, phi: f64 },
}

/// Full eigenfunction `ψ = φ χ ζ`. Real-valued for the parallelepipedal
/// channel (imaginary part zero).
pub fn psi(model: &ChannelModel, qn: QuantumNumbers, point: Point) -> Result<Complex64> {
    qn.validate_for(model)?;
    match (model.geometry(), qn, point) {
        (Geometry::Parallelepipedal, QuantumNumbers::Parallel { n, l, m }, Point::Cartesian { x, y, z }) => {
            check_x(x)?;
            let q = model.q();
            let value = phi_x(model, n, delta_parallel(l, m), x)? * chi_transverse(l, q, y)? * chi_transverse(m, q, z)?;
            Ok(Complex64::new(value, 0.0))
        }
        (Geometry::Cylindrical { .. }, QuantumNumbers::Cylinder { n, m, s }, Point::Cylindrical { x, rho, phi }) => {
            check_x(x)?;
            let radial = RadialMode::new(model, m, s)?.eval(rho)?;
            let delta = delta_cylinder(model, m, s)?;
            let longitudinal = phi_x(model, n, delta, x)?;
            Ok(zeta_azimuthal(m, phi) * (longitudinal * radial))
        }
        _ => Err(Error::InvalidParameter(
            "point coordinates do not match the channel geometry".into(),
        )),
    }
}

fn check_x(x: f64) -> Result<()> {
    if !(x >= 0.0) || !x.is_finite() {
        return Err(Error::Domain(format!("x = {x} outside the channel x >= 0")));
    }
    Ok(())
}
