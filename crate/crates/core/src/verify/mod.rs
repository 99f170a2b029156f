//! Quadrature and end-to-end consistency checks of the closed forms:
//! orthonormality, pointwise Hamiltonian residuals, and cross-validation
//! against the finite-difference solver.

mod checks;
mod quadrature;
mod suite;

pub use checks::{
    cross_validate, gram_from_functions, gram_matrix_radial, gram_matrix_transverse, gram_matrix_x,
    hamiltonian_residual_x, residual_for_trial, truncation_point, CrossValidation, CrossValidationRow, GramMatrix,
    ResidualReport, RESIDUAL_EXCLUSION_STEPS,
};
pub use quadrature::{gauss_legendre_rule, integrate, QuadratureMethod, QuadratureSpec};
pub use suite::{
    run_suite, CheckOutcome, CheckResult, SuiteConfig, SuiteReport, BESSEL_RESIDUAL_TOL, GRAM_TOL, RESIDUAL_STEP,
    RESIDUAL_TOL,
};
