//! Finite-difference Sturm–Liouville solves used to cross-check the closed
//! forms: the separated x-problem `−(cosh²(qx) φ')' + W φ = E φ` and the
//! radial disk problem, both reduced to symmetric tridiagonal eigenproblems.

mod grid;
mod sturm_liouville;
mod tridiag;

pub use grid::Grid1D;
pub use sturm_liouville::{
    discretize_flux_form, discretize_x, radial_operator, solve_radial_spectrum, solve_x_spectrum, XSpectrum,
    TAIL_DECAY_BOUND,
};
pub use tridiag::TridiagonalOperator;
