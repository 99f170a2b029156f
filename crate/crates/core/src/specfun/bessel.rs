//! Integer-order Bessel functions of the first kind and their positive zeros.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Miller start-index accuracy parameter; larger means a deeper start.
const MILLER_ACC: f64 = 160.0;
const RESCALE_ABOVE: f64 = 1e250;
const ZERO_RESIDUAL_CAP: f64 = 1e-10;
const ZERO_MAX_ITER: usize = 200;

/// The `index`-th positive zero of `J_order`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BesselZero {
    pub order: u32,
    pub index: u32,
    pub value: f64,
}

/// `J_order(x)`. Negative arguments use `J_m(-x) = (-1)^m J_m(x)`; non-finite
/// input yields NaN.
pub fn bessel_j(order: u32, x: f64) -> f64 {
    if !x.is_finite() {
        return f64::NAN;
    }
    if x < 0.0 {
        let v = bessel_j(order, -x);
        return if order.is_multiple_of(2) { v } else { -v };
    }
    if x == 0.0 {
        return if order == 0 { 1.0 } else { 0.0 };
    }
    if x <= 4.0 || x * x <= 4.0 * (order as f64 + 1.0) {
        series(order, x)
    } else {
        miller(order, x)
    }
}

/// `d/dx J_order(x)`.
pub fn bessel_j_derivative(order: u32, x: f64) -> f64 {
    if order == 0 {
        return -bessel_j(1, x);
    }
    if x == 0.0 {
        return if order == 1 { 0.5 } else { 0.0 };
    }
    order as f64 / x * bessel_j(order, x) - bessel_j(order + 1, x)
}

// Ascending power series; only used where the terms do not cancel badly.
fn series(order: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    let mut term = 1.0;
    for i in 1..=order {
        term *= half / i as f64;
        if term == 0.0 {
            return 0.0;
        }
    }
    let q = half * half;
    let mut sum = term;
    let m = order as f64;
    for k in 1..200 {
        let kf = k as f64;
        term *= -q / (kf * (kf + m));
        sum += term;
        if term.abs() <= 1e-17 * sum.abs() {
            break;
        }
    }
    sum
}

// Miller backward recurrence normalised by J_0 + 2 Σ J_{2k} = 1.
fn miller(order: u32, x: f64) -> f64 {
    let big = (order as f64).max(x.ceil());
    let mut start = (big + (MILLER_ACC * big).sqrt()) as u32 + 2;
    start += start % 2;

    let two_over_x = 2.0 / x;
    let mut j_next = 0.0; // J_{k+1}
    let mut j_cur = 1e-30; // J_k
    let mut norm = 0.0;
    let mut result = 0.0;
    for k in (1..=start).rev() {
        let j_prev = k as f64 * two_over_x * j_cur - j_next;
        j_next = j_cur;
        j_cur = j_prev;
        let idx = k - 1;
        if idx == order {
            result = j_cur;
        }
        if idx == 0 {
            norm += j_cur;
        } else if idx % 2 == 0 {
            norm += 2.0 * j_cur;
        }
        if j_cur.abs() > RESCALE_ABOVE {
            j_cur /= RESCALE_ABOVE;
            j_next /= RESCALE_ABOVE;
            norm /= RESCALE_ABOVE;
            result /= RESCALE_ABOVE;
        }
    }
    result / norm
}

/// McMahon's large-zero expansion for `j_{order,index}`.
pub fn mcmahon_guess(order: u32, index: u32) -> f64 {
    let mu = 4.0 * (order as f64).powi(2);
    let beta = (index as f64 + 0.5 * order as f64 - 0.25) * PI;
    let e = 8.0 * beta;
    beta - (mu - 1.0) / e
        - 4.0 * (mu - 1.0) * (7.0 * mu - 31.0) / (3.0 * e.powi(3))
        - 32.0 * (mu - 1.0) * (83.0 * mu * mu - 982.0 * mu + 3779.0) / (15.0 * e.powi(5))
}

/// Zeros `j_{order,1..=count}`.
///
/// Zeros of `J_0` are bracketed by `((s - 1/4)π, (s - 1/8)π)`; zeros of higher
/// orders by interlacing, `j_{m-1,s} < j_{m,s} < j_{m-1,s+1}`. Each bracket is
/// refined by Newton iteration started from the McMahon estimate, with
/// bisection whenever a step would leave the bracket.
pub fn bessel_zeros(order: u32, count: u32) -> Result<Vec<BesselZero>> {
    if count == 0 {
        return Ok(Vec::new());
    }
    let total = count + order;
    let mut row = (1..=total)
        .map(|s| {
            let s = s as f64;
            refine_zero(0, s as u32, (s - 0.25) * PI, (s - 0.125) * PI)
        })
        .collect::<Result<Vec<_>>>()?;
    for o in 1..=order {
        row = row
            .windows(2)
            .enumerate()
            .map(|(i, w)| refine_zero(o, i as u32 + 1, w[0], w[1]))
            .collect::<Result<Vec<_>>>()?;
    }
    row.truncate(count as usize);
    Ok(row
        .into_iter()
        .enumerate()
        .map(|(i, value)| BesselZero {
            order,
            index: i as u32 + 1,
            value,
        })
        .collect())
}

/// The single zero `j_{order,index}` (`index` is 1-based).
pub fn bessel_zero(order: u32, index: u32) -> Result<BesselZero> {
    if index == 0 {
        return Err(Error::InvalidParameter("Bessel zero index is 1-based".into()));
    }
    Ok(*bessel_zeros(order, index)?.last().expect("index >= 1"))
}

fn refine_zero(order: u32, index: u32, lo: f64, hi: f64) -> Result<f64> {
    let f = |x: f64| bessel_j(order, x);
    let (mut a, mut b) = (lo, hi);
    let fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::Convergence(format!(
            "no sign change of J_{order} on [{lo}, {hi}] for zero #{index}"
        )));
    }
    let sa = fa.signum();

    let guess = mcmahon_guess(order, index);
    let mut x = if guess > a && guess < b { guess } else { 0.5 * (a + b) };
    for _ in 0..ZERO_MAX_ITER {
        let fx = f(x);
        if fx == 0.0 {
            break;
        }
        if fx.signum() == sa {
            a = x;
        } else {
            b = x;
        }
        let d = bessel_j_derivative(order, x);
        let newton = x - fx / d;
        let next = if d != 0.0 && newton > a && newton < b {
            newton
        } else {
            0.5 * (a + b)
        };
        let step = (next - x).abs();
        x = next;
        if step <= 2.0 * f64::EPSILON * x || (b - a) <= 4.0 * f64::EPSILON * x {
            break;
        }
    }
    let residual = f(x).abs();
    if residual > ZERO_RESIDUAL_CAP {
        return Err(Error::Convergence(format!(
            "j_({order},{index}) ≈ {x} has residual {residual:e}"
        )));
    }
    Ok(x)
}
