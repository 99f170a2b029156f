//! Bound states of a particle with position-dependent mass `M(x) = sech²(qx)`
//! in semi-infinite parallelepipedal and cylindrical channels.
//!
//! The crate provides the closed-form spectrum and eigenfunctions
//! ([`analytic`]), an independent finite-difference Sturm–Liouville solver
//! ([`numeric`]) and quadrature/residual based consistency checks
//! ([`verify`]). Units are `ħ = 2m₀ = 1`.

// NaN-rejecting guards are written as `!(x > 0.0)` throughout.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod analytic;
pub mod error;
pub mod model;
pub mod numeric;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
