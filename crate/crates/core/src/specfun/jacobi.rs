use crate::error::{Error, Result};

/// Indices and degree of a Jacobi polynomial `P_n^{(a,b)}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiParams {
    pub a: f64,
    pub b: f64,
    pub n: u32,
}

impl JacobiParams {
    pub fn new(a: f64, b: f64, n: u32) -> Result<Self> {
        let p = Self { a, b, n };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<()> {
        if !(self.a > -1.0) || !(self.b > -1.0) {
            return Err(Error::InvalidParameter(format!(
                "Jacobi indices must exceed -1, got a={}, b={}",
                self.a, self.b
            )));
        }
        Ok(())
    }
}

const ENDPOINT_SLACK: f64 = 1e-12;

/// Evaluates `P_n^{(a,b)}(x)` on `[-1, 1]` by upward recurrence in the degree.
pub fn jacobi_eval(p: JacobiParams, x: f64) -> Result<f64> {
    p.validate()?;
    if !(x.abs() <= 1.0 + ENDPOINT_SLACK) {
        return Err(Error::Domain(format!("Jacobi argument {x} outside [-1, 1]")));
    }
    let x = x.clamp(-1.0, 1.0);
    let JacobiParams { a, b, n } = p;

    let mut prev = 1.0;
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = 0.5 * (a - b) + (1.0 + 0.5 * (a + b)) * x;
    for deg in 2..=n {
        let k = deg as f64;
        let s = 2.0 * k + a + b;
        let c0 = 2.0 * k * (k + a + b) * (s - 2.0);
        let c1 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        let c2 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
        let next = (c1 * cur - c2 * prev) / c0;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}
