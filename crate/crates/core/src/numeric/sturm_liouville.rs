use log::warn;

use crate::error::{Error, Result};
use crate::model::ChannelModel;

use super::{Grid1D, TridiagonalOperator};

/// Upper bound on `e^{−(1+δ) q x_max}` for the truncated domain to count as
/// converged.
pub const TAIL_DECAY_BOUND: f64 = 1e-12;

/// Conservative three-point discretisation of `−(p u')' + w u` on the
/// interior nodes of `grid`, Dirichlet at both ends:
/// `diag_i = [p(x_i − h/2) + p(x_i + h/2)]/h² + w(x_i)`,
/// `off_i = −p(x_i + h/2)/h²`.
pub fn discretize_flux_form(
    grid: &Grid1D,
    p: impl Fn(f64) -> f64,
    w: impl Fn(f64) -> f64,
) -> Result<TridiagonalOperator> {
    let h = grid.spacing();
    let h2 = h * h;
    let n = grid.n_points();
    let mut diag = Vec::with_capacity(n);
    let mut off = Vec::with_capacity(n - 1);
    for (i, x) in grid.nodes().enumerate() {
        let right = p(x + 0.5 * h);
        diag.push((p(x - 0.5 * h) + right) / h2 + w(x));
        if i + 1 < n {
            off.push(-right / h2);
        }
    }
    TridiagonalOperator::new(diag, off)
}

/// Discretises the separated x-operator `−(cosh²(qx) φ')' + W(x) φ` for the
/// coupling exponent `delta`.
pub fn discretize_x(model: &ChannelModel, delta: f64, grid: &Grid1D) -> Result<TridiagonalOperator> {
    let h = grid.spacing();
    let w_first = model.reduced_x_potential(delta, grid.node(1))?;
    if model.k() < 1.0 && (w_first * h * h).abs() > 1.0 {
        return Err(Error::Config(format!(
            "grid too coarse for k = {} < 1: |W(x_1)| h² = {:.3e} > 1",
            model.k(),
            (w_first * h * h).abs()
        )));
    }
    let profile = model.profile();
    discretize_flux_form(
        grid,
        |x| profile.inverse_mass(x),
        |x| {
            model
                .reduced_x_potential(delta, x)
                .expect("interior nodes are positive")
        },
    )
}

/// Eigenvalues of the separated x-problem plus any truncation warnings.
#[derive(Debug, Clone, PartialEq)]
pub struct XSpectrum {
    pub eigenvalues: Vec<f64>,
    pub warnings: Vec<String>,
}

/// Lowest `n_eigen` finite-difference eigenvalues of the separated x-problem.
///
/// Warns when the truncated domain is too short: either the slowest decay
/// factor `e^{−(1+δ) q x_max}` exceeds [`TAIL_DECAY_BOUND`], or the highest
/// requested level is not classically forbidden at `x_max`.
pub fn solve_x_spectrum(model: &ChannelModel, delta: f64, n_eigen: usize, grid: &Grid1D) -> Result<XSpectrum> {
    let op = discretize_x(model, delta, grid)?;
    let eigenvalues = op.lowest_eigenvalues(n_eigen)?;
    let mut warnings = model.warnings();

    let decay = (-(1.0 + delta) * model.q() * grid.x_max()).exp();
    if decay >= TAIL_DECAY_BOUND {
        warnings.push(format!(
            "x_max = {} too short: tail decay factor {decay:.3e} >= {TAIL_DECAY_BOUND:e}",
            grid.x_max()
        ));
    }
    if let Some(&top) = eigenvalues.last() {
        let w_end = model.reduced_x_potential(delta, grid.x_max())?;
        if w_end <= top {
            warnings.push(format!(
                "level {} (E ≈ {top:.6}) is not confined within x_max = {}: W(x_max) = {w_end:.6}",
                n_eigen - 1,
                grid.x_max()
            ));
        }
    }
    for w in &warnings {
        warn!("{w}");
    }
    Ok(XSpectrum { eigenvalues, warnings })
}

/// Symmetrised finite-difference operator of the disk problem
/// `−(χ'' + χ'/ρ − m²χ/ρ²) = κ² χ` on `(0, radius)`, `χ(radius) = 0`.
///
/// Nodes are staggered, `ρ_i = (i − 1/2) h` with `h = radius/(n + 1/2)`, so
/// the flux `ρ χ'` vanishes at the origin (regularity) and no node sits on
/// `ρ = 0`. The weighted form `−(ρ χ')' + m² χ/ρ = κ² ρ χ` is made symmetric
/// by the similarity `D^{-1/2} A D^{-1/2}`, `D = diag(ρ_i)`.
pub fn radial_operator(m: i32, radius: f64, n_points: usize) -> Result<TridiagonalOperator> {
    if n_points < 3 {
        return Err(Error::Config(format!(
            "radial solve needs at least 3 points, got {n_points}"
        )));
    }
    if !(radius > 0.0) {
        return Err(Error::InvalidParameter(format!("radius must be > 0, got {radius}")));
    }
    let h = radius / (n_points as f64 + 0.5);
    let m2 = (m as f64).powi(2);
    let rho = |i: usize| (i as f64 - 0.5) * h;
    let mut diag = Vec::with_capacity(n_points);
    let mut off = Vec::with_capacity(n_points - 1);
    for i in 1..=n_points {
        let r = rho(i);
        let inner = (r - 0.5 * h).max(0.0);
        let outer = r + 0.5 * h;
        let a_ii = (inner + outer) / (h * h) + m2 / r;
        diag.push(a_ii / r);
        if i < n_points {
            off.push(-outer / (h * h) / (r * rho(i + 1)).sqrt());
        }
    }
    TridiagonalOperator::new(diag, off)
}

/// Lowest `n_eigen` values of `κ²` for azimuthal number `m`; they approximate
/// `(j_{|m|,s}/R)²`.
pub fn solve_radial_spectrum(model: &ChannelModel, m: i32, n_eigen: usize, n_points: usize) -> Result<Vec<f64>> {
    let radius = model
        .radius()
        .ok_or_else(|| Error::InvalidParameter("radial solve needs a cylindrical model".into()))?;
    radial_operator(m, radius, n_points)?.lowest_eigenvalues(n_eigen)
}
