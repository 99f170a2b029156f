//! Overflow-safe hyperbolic helpers.

use std::f64::consts::LN_2;

/// `ln(cosh x)` without overflow for large `|x|`.
pub fn ln_cosh(x: f64) -> f64 {
    let a = x.abs();
    a + (-2.0 * a).exp().ln_1p() - LN_2
}

pub fn sech(x: f64) -> f64 {
    (-ln_cosh(x)).exp()
}

/// `sech(x)^p` evaluated in log space, so it underflows gracefully.
pub fn sech_pow(x: f64, p: f64) -> f64 {
    (-p * ln_cosh(x)).exp()
}

pub fn cosh_sq(x: f64) -> f64 {
    let c = x.cosh();
    c * c
}

/// `csch(x)^2`; infinite at the origin.
pub fn csch_sq(x: f64) -> f64 {
    let s = x.sinh();
    1.0 / (s * s)
}
