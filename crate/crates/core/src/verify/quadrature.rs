use std::sync::OnceLock;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadratureMethod {
    AdaptiveSimpson,
    /// 20-point Gauss–Legendre on equal panels, doubled until two successive
    /// estimates agree to `abs_tol`.
    GaussLegendreComposite,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub method: QuadratureMethod,
    pub abs_tol: f64,
    /// Recursion depth cap (Simpson) or number of panel doublings (Gauss–Legendre).
    pub max_depth: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            method: QuadratureMethod::GaussLegendreComposite,
            abs_tol: 1e-12,
            max_depth: 12,
        }
    }
}

impl QuadratureSpec {
    pub fn adaptive_simpson(abs_tol: f64, max_depth: usize) -> Self {
        Self {
            method: QuadratureMethod::AdaptiveSimpson,
            abs_tol,
            max_depth,
        }
    }

    pub fn gauss_legendre(abs_tol: f64, max_doublings: usize) -> Self {
        Self {
            method: QuadratureMethod::GaussLegendreComposite,
            abs_tol,
            max_depth: max_doublings,
        }
    }
}

const GL_ORDER: usize = 20;
const GL_START_PANELS: usize = 8;

/// Nodes and weights of the `order`-point Gauss–Legendre rule on `[-1, 1]`,
/// from Newton iteration on `P_order`.
pub fn gauss_legendre_rule(order: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; order];
    let mut weights = vec![0.0; order];
    let nf = order as f64;
    for i in 0..order.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for j in 2..=order {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            let p = if order == 0 { 1.0 } else { p1 };
            dp = nf * (x * p - p0) / (x * x - 1.0);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
    (nodes, weights)
}

fn gl20() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre_rule(GL_ORDER))
}

/// `∫_a^b f(x) dx` under `spec`.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    if !(spec.abs_tol > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "abs_tol must be > 0, got {}",
            spec.abs_tol
        )));
    }
    if a == b {
        return Ok(0.0);
    }
    match spec.method {
        QuadratureMethod::GaussLegendreComposite => composite_gl(&f, a, b, spec),
        QuadratureMethod::AdaptiveSimpson => {
            let m = 0.5 * (a + b);
            let (fa, fm, fb) = (f(a), f(m), f(b));
            let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
            simpson_step(&f, a, b, fa, fm, fb, whole, spec.abs_tol, spec.max_depth)
        }
    }
}

fn gl_panels(f: &impl Fn(f64) -> f64, a: f64, b: f64, panels: usize) -> f64 {
    let (nodes, weights) = gl20();
    let width = (b - a) / panels as f64;
    let half = 0.5 * width;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * width;
        let panel: f64 = nodes.iter().zip(weights).map(|(x, w)| w * f(mid + half * x)).sum();
        total += panel * half;
    }
    total
}

fn composite_gl(f: &impl Fn(f64) -> f64, a: f64, b: f64, spec: &QuadratureSpec) -> Result<f64> {
    let mut panels = GL_START_PANELS;
    let mut prev = gl_panels(f, a, b, panels);
    for _ in 0..spec.max_depth {
        panels *= 2;
        let next = gl_panels(f, a, b, panels);
        if !next.is_finite() {
            return Err(Error::Quadrature(format!("non-finite integrand on [{a}, {b}]")));
        }
        if (next - prev).abs() <= spec.abs_tol {
            return Ok(next);
        }
        prev = next;
    }
    Err(Error::Quadrature(format!(
        "Gauss-Legendre did not converge to {:e} on [{a}, {b}] with {panels} panels",
        spec.abs_tol
    )))
}

#[allow(clippy::too_many_arguments)]
fn simpson_step(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if !delta.is_finite() {
        return Err(Error::Quadrature(format!("non-finite integrand near [{a}, {b}]")));
    }
    if delta.abs() <= 15.0 * tol {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::Quadrature(format!(
            "adaptive Simpson depth cap reached on [{a}, {b}] (error estimate {:e})",
            delta.abs() / 15.0
        )));
    }
    Ok(simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?
        + simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?)
}
