//! The composite verification run behind the `verify` command.

use std::fmt;

use crate::analytic::{delta_cylinder, delta_parallel, Caps};
use crate::error::Result;
use crate::model::{ChannelModel, Geometry};
use crate::numeric::Grid1D;
use crate::specfun::{bessel_j, bessel_zeros};

use super::checks::{
    cross_validate_scaled, gram_matrix_radial, gram_matrix_x, hamiltonian_residual_x, CrossValidation,
};
use super::quadrature::QuadratureSpec;

pub const GRAM_TOL: f64 = 1e-8;
pub const RESIDUAL_TOL: f64 = 1e-4;
pub const RESIDUAL_STEP: f64 = 1e-3;
pub const BESSEL_RESIDUAL_TOL: f64 = 1e-12;
const SHIFT_SAMPLES: usize = 50;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub caps: Caps,
    pub grid: Grid1D,
    /// Relative tolerance of the spectrum cross-validation.
    pub rel_tol: f64,
    pub quadrature: QuadratureSpec,
    /// Multiplies every closed-form energy before comparison. Anything other
    /// than 1 is a deliberate fault used to exercise the failure path.
    pub fault_energy_scale: f64,
}

impl SuiteConfig {
    pub fn new(caps: Caps, grid: Grid1D) -> Self {
        Self {
            caps,
            grid,
            rel_tol: 1e-4,
            quadrature: QuadratureSpec::default(),
            fault_energy_scale: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckOutcome::Pass => "PASS",
            CheckOutcome::Fail => "FAIL",
            CheckOutcome::NotApplicable => "N/A",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub outcome: CheckOutcome,
    /// Worst observed value of the checked quantity.
    pub value: f64,
    pub tolerance: f64,
    pub detail: String,
}

impl CheckResult {
    fn measured(name: &str, value: f64, tolerance: f64, detail: String) -> Self {
        let outcome = if value <= tolerance {
            CheckOutcome::Pass
        } else {
            CheckOutcome::Fail
        };
        Self {
            name: name.into(),
            outcome,
            value,
            tolerance,
            detail,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub checks: Vec<CheckResult>,
    pub cross_validation: CrossValidation,
    pub warnings: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.outcome != CheckOutcome::Fail)
    }
}

/// Runs every consistency check for `model`.
pub fn run_suite(model: &ChannelModel, config: &SuiteConfig) -> Result<SuiteReport> {
    let caps = config.caps;
    let mut checks = Vec::new();
    let mut warnings = model.warnings();

    let cv = cross_validate_scaled(model, &caps, &config.grid, config.rel_tol, config.fault_energy_scale)?;
    warnings.extend(cv.warnings.iter().cloned());
    checks.push(CheckResult::measured(
        "spectrum cross-validation",
        cv.max_rel_error(),
        config.rel_tol,
        format!(
            "{} levels, grid {} points on [0, {}]",
            cv.rows.len(),
            config.grid.n_points(),
            config.grid.x_max()
        ),
    ));

    let deltas: Vec<f64> = match model.geometry() {
        Geometry::Parallelepipedal => {
            // δ is symmetric in (l, m), so each value is checked once
            let mut out: Vec<f64> = (0..=caps.l_max)
                .flat_map(|l| (0..=caps.m_max).map(move |m| delta_parallel(l, m)))
                .collect();
            out.sort_by(f64::total_cmp);
            out.dedup();
            out
        }
        Geometry::Cylindrical { .. } => {
            let mut out = Vec::new();
            for m in 0..=caps.m_max as i32 {
                for s in 1..=caps.s_max {
                    out.push(delta_cylinder(model, m, s)?);
                }
            }
            out
        }
    };

    let gram_n = caps.n_max.min(10);
    let mut worst_gram: f64 = 0.0;
    for &d in &deltas {
        let g = gram_matrix_x(model, d, gram_n, &config.quadrature)?;
        worst_gram = worst_gram.max(g.identity_deviation());
    }
    checks.push(CheckResult::measured(
        "x-factor orthonormality",
        worst_gram,
        GRAM_TOL,
        format!("n <= {gram_n} over {} channels", deltas.len()),
    ));

    if let Geometry::Cylindrical { .. } = model.geometry() {
        let mut worst: f64 = 0.0;
        for m in 0..=caps.m_max as i32 {
            let g = gram_matrix_radial(model, m, caps.s_max.max(1), &config.quadrature)?;
            worst = worst.max(g.identity_deviation());
        }
        checks.push(CheckResult::measured(
            "radial orthonormality",
            worst,
            GRAM_TOL,
            format!("|m| <= {}, s <= {}", caps.m_max, caps.s_max.max(1)),
        ));
    }

    let residual_delta = deltas.first().copied().unwrap_or(2f64.sqrt());
    let residual_n = caps.n_max.min(3);
    let mut worst_res: f64 = 0.0;
    let mut second_order = true;
    for n in 0..=residual_n {
        let r = hamiltonian_residual_x(model, residual_delta, n, RESIDUAL_STEP)?;
        worst_res = worst_res.max(r.max_relative_residual);
        second_order &= r.converges_second_order;
    }
    let mut residual = CheckResult::measured(
        "Hamiltonian residual",
        worst_res,
        RESIDUAL_TOL,
        format!("n <= {residual_n}, h = {RESIDUAL_STEP}, second-order decay: {second_order}"),
    );
    if !second_order {
        residual.outcome = CheckOutcome::Fail;
    }
    checks.push(residual);

    let (orders, count) = match model.geometry() {
        Geometry::Parallelepipedal => (1, 5),
        Geometry::Cylindrical { .. } => (caps.m_max.max(1), caps.s_max.max(5)),
    };
    let mut worst_j: f64 = 0.0;
    for order in 0..=orders {
        for z in bessel_zeros(order, count)? {
            worst_j = worst_j.max(bessel_j(order, z.value).abs());
        }
    }
    checks.push(CheckResult::measured(
        "Bessel zero residuals",
        worst_j,
        BESSEL_RESIDUAL_TOL,
        format!("orders <= {orders}, indices <= {count}"),
    ));

    let amb = model.ambiguity();
    let name = "effective potential shift identically zero";
    if amb.shift_vanishes() {
        let worst = (0..SHIFT_SAMPLES)
            .map(|i| {
                model
                    .effective_potential_shift(-5.0 + 10.0 * i as f64 / (SHIFT_SAMPLES - 1) as f64)
                    .abs()
            })
            .fold(0.0, f64::max);
        checks.push(CheckResult::measured(
            name,
            worst,
            f64::EPSILON,
            format!("{SHIFT_SAMPLES} samples on [-5, 5]"),
        ));
    } else {
        checks.push(CheckResult {
            name: name.into(),
            outcome: CheckOutcome::NotApplicable,
            value: f64::NAN,
            tolerance: f64::EPSILON,
            detail: format!(
                "alpha = {}, beta = {} is not the BenDaniel-Duke ordering (coefficients {}, {})",
                amb.alpha,
                amb.beta,
                amb.cosh_coefficient(),
                amb.constant_coefficient()
            ),
        });
    }

    Ok(SuiteReport {
        checks,
        cross_validation: cv,
        warnings,
    })
}
