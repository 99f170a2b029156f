use std::f64::consts::{LN_10, PI};

use crate::analytic::{
    chi_transverse, delta_cylinder, delta_parallel, energy, Caps, QuantumNumbers, RadialMode, XMode,
};
use crate::error::{Error, Result};
use crate::model::{ChannelModel, Geometry};
use crate::numeric::{solve_x_spectrum, Grid1D};
use crate::specfun::hyperbolic::cosh_sq;
use crate::specfun::log_gamma;

use super::quadrature::{integrate, QuadratureSpec};

/// Integrand magnitude bound `sech(qx)^{2(1+δ)}` at which x-integrals are cut.
const X_INTEGRAND_CUTOFF: f64 = 1e-16;
/// Residual sample points avoid `(0, RESIDUAL_EXCLUSION_STEPS · h)`.
pub const RESIDUAL_EXCLUSION_STEPS: f64 = 5.0;
const RESIDUAL_SAMPLES: usize = 400;
const GRADED_LEVELS: i32 = 40;

/// Point where `sech(qx)^{2(1+δ)}` drops below `1e-16`.
pub fn truncation_point(q: f64, delta: f64) -> f64 {
    let ln_cosh = -X_INTEGRAND_CUTOFF.log10() * LN_10 / (2.0 * (1.0 + delta));
    // cosh(u) = e^{ln_cosh}
    ln_cosh.exp().acosh() / q
}

/// Symmetric matrix of overlap integrals.
#[derive(Debug, Clone, PartialEq)]
pub struct GramMatrix {
    pub entries: Vec<Vec<f64>>,
    /// Upper end of the integration interval.
    pub upper: f64,
    /// Bound on the neglected tail beyond `upper` (zero for finite domains).
    pub tail_bound: f64,
}

impl GramMatrix {
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    /// `max_ij |G_ij − δ_ij|`.
    pub fn identity_deviation(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, row) in self.entries.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((v - target).abs());
            }
        }
        worst
    }

    pub fn asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.dim() {
            for j in 0..i {
                worst = worst.max((self.entries[i][j] - self.entries[j][i]).abs());
            }
        }
        worst
    }
}

/// Overlaps `∫ w f_i f_j` of an arbitrary function family on `[a, b]`.
/// With `graded` set, the interval is split geometrically towards `a` so
/// that `x^k`-type endpoint behaviour is resolved.
pub fn gram_from_functions(
    funcs: &[&dyn Fn(f64) -> f64],
    weight: &dyn Fn(f64) -> f64,
    a: f64,
    b: f64,
    graded: bool,
    spec: &QuadratureSpec,
) -> Result<Vec<Vec<f64>>> {
    let n = funcs.len();
    let mut g = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let f = |x: f64| weight(x) * funcs[i](x) * funcs[j](x);
            let v = if graded {
                integrate_graded(&f, a, b, spec)?
            } else {
                integrate(f, a, b, spec)?
            };
            g[i][j] = v;
            g[j][i] = v;
        }
    }
    Ok(g)
}

fn integrate_graded(f: &impl Fn(f64) -> f64, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    let pieces = GRADED_LEVELS as f64 + 1.0;
    let piece_spec = QuadratureSpec {
        abs_tol: spec.abs_tol / pieces,
        ..*spec
    };
    let len = b - a;
    let mut total = 0.0;
    for i in 0..GRADED_LEVELS {
        let hi = a + len * 0.5f64.powi(i);
        let lo = a + len * 0.5f64.powi(i + 1);
        total += integrate(f, lo, hi, &piece_spec)?;
    }
    total += integrate(f, a, a + len * 0.5f64.powi(GRADED_LEVELS), &piece_spec)?;
    Ok(total)
}

/// `G_{nn'} = ∫₀^{x_end} φ_n φ_{n'} dx` for `n, n' <= n_max` at fixed `δ`.
pub fn gram_matrix_x(model: &ChannelModel, delta: f64, n_max: u32, spec: &QuadratureSpec) -> Result<GramMatrix> {
    if n_max > 10 {
        return Err(Error::InvalidParameter(format!(
            "gram_matrix_x supports n_max <= 10, got {n_max}"
        )));
    }
    let modes = (0..=n_max)
        .map(|n| XMode::new(model, n, delta))
        .collect::<Result<Vec<_>>>()?;
    let closures: Vec<Box<dyn Fn(f64) -> f64 + '_>> = modes
        .iter()
        .map(|m| Box::new(move |x| m.eval(x)) as Box<dyn Fn(f64) -> f64>)
        .collect();
    let funcs: Vec<&dyn Fn(f64) -> f64> = closures.iter().map(|b| b.as_ref()).collect();
    let upper = truncation_point(model.q(), delta);
    let entries = gram_from_functions(&funcs, &|_| 1.0, 0.0, upper, true, spec)?;

    // |φ_n| <= N_n · max|P_n| · sech^{1+δ}, max|P_n| = max(C(n+a,n), C(n+b,n))
    let (q, k) = (model.q(), model.k());
    let mut amp: f64 = 0.0;
    for mode in &modes {
        let nf = mode.n() as f64;
        let pmax = ln_binomial(nf + k - 0.5, nf)?.max(ln_binomial(nf + delta, nf)?).exp();
        amp = amp.max(mode.norm() * pmax);
    }
    let p = 2.0 * (1.0 + delta);
    let tail_bound = amp * amp * 2f64.powf(p) * (-p * q * upper).exp() / (p * q);
    Ok(GramMatrix {
        entries,
        upper,
        tail_bound,
    })
}

fn ln_binomial(top: f64, n: f64) -> Result<f64> {
    Ok(log_gamma(top + 1.0)? - log_gamma(n + 1.0)? - log_gamma(top - n + 1.0)?)
}

/// `∫₀^R χ_{|m|,s} χ_{|m|,s'} ρ dρ` for `s, s' <= s_max`.
pub fn gram_matrix_radial(model: &ChannelModel, m: i32, s_max: u32, spec: &QuadratureSpec) -> Result<GramMatrix> {
    let radius = model
        .radius()
        .ok_or_else(|| Error::InvalidParameter("radial Gram matrix needs a cylindrical model".into()))?;
    let modes = (1..=s_max)
        .map(|s| RadialMode::new(model, m, s))
        .collect::<Result<Vec<_>>>()?;
    let closures: Vec<Box<dyn Fn(f64) -> f64 + '_>> = modes
        .iter()
        .map(|md| Box::new(move |r: f64| md.eval(r.min(radius)).unwrap_or(f64::NAN)) as Box<dyn Fn(f64) -> f64>)
        .collect();
    let funcs: Vec<&dyn Fn(f64) -> f64> = closures.iter().map(|b| b.as_ref()).collect();
    let entries = gram_from_functions(&funcs, &|r| r, 0.0, radius, false, spec)?;
    Ok(GramMatrix {
        entries,
        upper: radius,
        tail_bound: 0.0,
    })
}

/// `∫ χ_l χ_{l'} dy` over the box `|y| <= π/(2q)` for `l, l' <= l_max`.
pub fn gram_matrix_transverse(q: f64, l_max: u32, spec: &QuadratureSpec) -> Result<GramMatrix> {
    let half = PI / (2.0 * q);
    let closures: Vec<Box<dyn Fn(f64) -> f64>> = (0..=l_max)
        .map(|l| {
            Box::new(move |y: f64| chi_transverse(l, q, y.clamp(-half, half)).unwrap_or(f64::NAN))
                as Box<dyn Fn(f64) -> f64>
        })
        .collect();
    let funcs: Vec<&dyn Fn(f64) -> f64> = closures.iter().map(|b| b.as_ref()).collect();
    let entries = gram_from_functions(&funcs, &|_| 1.0, -half, half, false, spec)?;
    Ok(GramMatrix {
        entries,
        upper: half,
        tail_bound: 0.0,
    })
}

/// Pointwise check of `−(p φ')' + W φ = E φ`, `p = cosh²(qx)`, by central
/// differences at step `h` and `h/2` on a common sample set.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualReport {
    /// x-excitation of the analytic state, `None` for a trial function.
    pub n: Option<u32>,
    pub delta: f64,
    pub h: f64,
    pub energy: f64,
    /// `max_i |(Hφ)(x_i) − E φ(x_i)| / (|E| max_i |φ(x_i)|)` at step `h`.
    pub max_relative_residual: f64,
    /// Same quantity at step `h/2`.
    pub half_step_residual: f64,
    pub convergence_ratio: f64,
    pub converges_second_order: bool,
}

impl ResidualReport {
    pub fn passes(&self, tol: f64) -> bool {
        self.max_relative_residual <= tol && self.converges_second_order
    }
}

fn relative_residual(
    model: &ChannelModel,
    delta: f64,
    f: &dyn Fn(f64) -> f64,
    energy: f64,
    h: f64,
    samples: &[f64],
) -> Result<f64> {
    let q = model.q();
    let p = |x: f64| cosh_sq(q * x);
    let mut worst: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for &x in samples {
        let (fm, f0, fp) = (f(x - h), f(x), f(x + h));
        let flux = p(x + 0.5 * h) * (fp - f0) - p(x - 0.5 * h) * (f0 - fm);
        let h_f = -flux / (h * h) + model.reduced_x_potential(delta, x)? * f0;
        worst = worst.max((h_f - energy * f0).abs());
        scale = scale.max(f0.abs());
    }
    Ok(worst / (energy.abs() * scale))
}

fn residual_report(
    model: &ChannelModel,
    delta: f64,
    n: Option<u32>,
    f: &dyn Fn(f64) -> f64,
    energy: f64,
    h: f64,
) -> Result<ResidualReport> {
    if !(h > 0.0) {
        return Err(Error::InvalidParameter(format!("step h must be > 0, got {h}")));
    }
    let lo = RESIDUAL_EXCLUSION_STEPS * h;
    let hi = truncation_point(model.q(), delta);
    if lo >= hi {
        return Err(Error::InvalidParameter(format!(
            "step h = {h} too large for the sample window"
        )));
    }
    let samples: Vec<f64> = (0..RESIDUAL_SAMPLES)
        .map(|i| lo + (hi - lo) * i as f64 / (RESIDUAL_SAMPLES - 1) as f64)
        .collect();
    let coarse = relative_residual(model, delta, f, energy, h, &samples)?;
    let fine = relative_residual(model, delta, f, energy, 0.5 * h, &samples)?;
    let ratio = coarse / fine;
    Ok(ResidualReport {
        n,
        delta,
        h,
        energy,
        max_relative_residual: coarse,
        half_step_residual: fine,
        convergence_ratio: ratio,
        converges_second_order: (3.5..=4.5).contains(&ratio),
    })
}

/// Residual of the analytic state `φ_n` with its closed-form energy.
pub fn hamiltonian_residual_x(model: &ChannelModel, delta: f64, n: u32, h: f64) -> Result<ResidualReport> {
    let mode = XMode::new(model, n, delta)?;
    residual_report(model, delta, Some(n), &|x| mode.eval(x), energy(model, n, delta), h)
}

/// Residual of an arbitrary trial function at a trial energy (negative control).
pub fn residual_for_trial(
    model: &ChannelModel,
    delta: f64,
    trial: &dyn Fn(f64) -> f64,
    trial_energy: f64,
    h: f64,
) -> Result<ResidualReport> {
    residual_report(model, delta, None, trial, trial_energy, h)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossValidationRow {
    pub qn: QuantumNumbers,
    pub delta: f64,
    pub e_analytic: f64,
    pub e_numeric: f64,
    pub rel_error: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CrossValidation {
    pub rows: Vec<CrossValidationRow>,
    pub rel_tol: f64,
    pub warnings: Vec<String>,
}

impl CrossValidation {
    pub fn all_passed(&self) -> bool {
        self.rows.iter().all(|r| r.passed)
    }

    pub fn max_rel_error(&self) -> f64 {
        self.rows.iter().map(|r| r.rel_error).fold(0.0, f64::max)
    }
}

/// Pairs the finite-difference levels of every transverse channel within
/// `caps` with the closed-form energies, level by level.
///
/// Cylinder channels are indexed by `|m|`; the sign of `m` does not enter the
/// x-problem.
pub fn cross_validate(model: &ChannelModel, caps: &Caps, grid: &Grid1D, rel_tol: f64) -> Result<CrossValidation> {
    cross_validate_scaled(model, caps, grid, rel_tol, 1.0)
}

pub(crate) fn cross_validate_scaled(
    model: &ChannelModel,
    caps: &Caps,
    grid: &Grid1D,
    rel_tol: f64,
    analytic_scale: f64,
) -> Result<CrossValidation> {
    let mut channels: Vec<(f64, QuantumNumbers)> = Vec::new();
    match model.geometry() {
        Geometry::Parallelepipedal => {
            for l in 0..=caps.l_max {
                for m in 0..=caps.m_max {
                    channels.push((delta_parallel(l, m), QuantumNumbers::Parallel { n: 0, l, m }));
                }
            }
        }
        Geometry::Cylindrical { .. } => {
            for m in 0..=caps.m_max as i32 {
                for s in 1..=caps.s_max {
                    channels.push((delta_cylinder(model, m, s)?, QuantumNumbers::Cylinder { n: 0, m, s }));
                }
            }
        }
    }

    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    for &(delta, channel) in &channels {
        let solved = solve_x_spectrum(model, delta, caps.n_max as usize + 1, grid)?;
        for w in solved.warnings {
            if !warnings.contains(&w) {
                warnings.push(w);
            }
        }
        for (n, e_numeric) in solved.eigenvalues.into_iter().enumerate() {
            let e_analytic = analytic_scale * energy(model, n as u32, delta);
            let rel_error = ((e_numeric - e_analytic) / e_analytic).abs();
            rows.push(CrossValidationRow {
                qn: channel.with_n(n as u32),
                delta,
                e_analytic,
                e_numeric,
                rel_error,
                passed: rel_error <= rel_tol,
            });
        }
    }
    rows.sort_by_key(|r| match r.qn {
        QuantumNumbers::Parallel { n, l, m } => (n, l as i64, m as i64),
        QuantumNumbers::Cylinder { n, m, s } => (n, m as i64, s as i64),
    });
    Ok(CrossValidation {
        rows,
        rel_tol,
        warnings,
    })
}
