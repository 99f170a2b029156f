use crate::error::{Error, Result};

/// Uniform grid on `[x_min, x_max]` with Dirichlet end nodes; only the
/// `n_points` interior nodes `x_i = x_min + i h`, `i = 1..=n_points`, are
/// unknowns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid1D {
    x_min: f64,
    x_max: f64,
    n_points: usize,
}

impl Grid1D {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self> {
        if !(x_min >= 0.0) || !x_max.is_finite() || !(x_max > x_min) {
            return Err(Error::Config(format!(
                "grid needs 0 <= x_min < x_max, got [{x_min}, {x_max}]"
            )));
        }
        if n_points < 3 {
            return Err(Error::Config(format!(
                "grid needs at least 3 interior points, got {n_points}"
            )));
        }
        Ok(Self { x_min, x_max, n_points })
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn spacing(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points as f64 + 1.0)
    }

    /// Interior node `i` (1-based).
    pub fn node(&self, i: usize) -> f64 {
        self.x_min + i as f64 * self.spacing()
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (1..=self.n_points).map(move |i| self.node(i))
    }

    /// Same interval with twice as many interior points.
    pub fn refined(&self) -> Self {
        Self {
            n_points: 2 * self.n_points,
            ..*self
        }
    }
}
